"""Analysis reports and their table / CSV / JSON renderings."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .entropy import EntropyDecomposition, TransmissionReport

FORMATS = ("table", "csv", "json")

DECOMPOSITION_COLUMNS = ("level", "group_count", "Htot", "SigmaH", "H0", "pctH0")
TRANSMISSION_COLUMNS = ("Hx", "Hy", "Hz", "Hxy", "Hxz", "Hyz", "Hxyz", "Txy", "Txz", "Tyz", "Txyz")
# order of the rows in the published transmission table
_TABLE_TRANSMISSION = ("Hxyz", "Hxy", "Hxz", "Hyz", "Hx", "Hy", "Hz", "Txy", "Txz", "Tyz", "Txyz")

_T_ATTR = {
    "Hx": "h_x", "Hy": "h_y", "Hz": "h_z", "Hxy": "h_xy", "Hxz": "h_xz", "Hyz": "h_yz",
    "Hxyz": "h_xyz", "Txy": "t_xy", "Txz": "t_xz", "Tyz": "t_yz", "Txyz": "t_xyz",
}


@dataclass(frozen=True)
class LevelResult:
    level: str
    decomposition: EntropyDecomposition
    transmission: TransmissionReport
    metadata: dict = field(default_factory=dict, compare=True)

    def decomposition_row(self) -> dict:
        d = self.decomposition
        return {
            "level": self.level,
            "group_count": d.group_count,
            "Htot": d.h_total,
            "SigmaH": d.sigma_h,
            "H0": d.h0,
            "pctH0": d.pct_h0,
        }

    def transmission_row(self) -> dict:
        return {col: getattr(self.transmission, attr) for col, attr in _T_ATTR.items()}

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "metadata": self.metadata,
            "decomposition": self.decomposition.to_dict(),
            "transmission": self.transmission.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LevelResult":
        return cls(
            d["level"],
            EntropyDecomposition.from_dict(d["decomposition"]),
            TransmissionReport.from_dict(d["transmission"]),
            d.get("metadata", {}),
        )


@dataclass(frozen=True)
class AnalysisReport:
    levels: tuple[LevelResult, ...] = ()
    corpus: dict = field(default_factory=dict)

    def level(self, name: str) -> LevelResult:
        for lv in self.levels:
            if lv.level == name:
                return lv
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"corpus": self.corpus, "levels": [lv.to_dict() for lv in self.levels]}

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        return cls(tuple(LevelResult.from_dict(lv) for lv in d.get("levels", [])), d.get("corpus", {}))


def parse_report(text: str) -> AnalysisReport:
    return AnalysisReport.from_dict(json.loads(text))


def _fmt2(value) -> str:
    return f"{value:.2f}" if isinstance(value, float) else str(value)


def _render_table(report: AnalysisReport) -> str:
    lines = ["Between-group entropy (bits)", "  ".join(("level", "groups", "Htot", "SigmaH", "H0", "%H0"))]
    for lv in report.levels:
        row = lv.decomposition_row()
        lines.append("  ".join(_fmt2(row[c]) for c in DECOMPOSITION_COLUMNS))
    lines += ["", "Transmission (bits)", "  ".join(("level",) + _TABLE_TRANSMISSION)]
    for lv in report.levels:
        row = lv.transmission_row()
        lines.append("  ".join([lv.level] + [_fmt2(row[c]) for c in _TABLE_TRANSMISSION]))
    return "\n".join(lines) + "\n"


def _render_csv(report: AnalysisReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(DECOMPOSITION_COLUMNS)
    for lv in report.levels:
        row = lv.decomposition_row()
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row.values()])
    buf.write("\n")
    writer.writerow(("level",) + TRANSMISSION_COLUMNS)
    for lv in report.levels:
        writer.writerow([lv.level] + [repr(v) for v in lv.transmission_row().values()])
    return buf.getvalue()


def render(report: AnalysisReport, format: str = "table") -> str:
    if format == "table":
        return _render_table(report)
    if format == "csv":
        return _render_csv(report)
    if format == "json":
        return json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n"
    raise ValueError(f"unknown format {format!r}; choose from {FORMATS}")
