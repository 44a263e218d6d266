"""Bibliographic records, country extraction and group assignment."""
from __future__ import annotations

import io
import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .exceptions import CorpusFormatError, DuplicateIdError, InputError, UnmatchedCountryError

POLICIES = ("drop", "error", "other")
OTHER_GROUP = "Other"
BUNDLED_SCHEMES = {"eu15": "eu15.tsv", "blocs": "blocs.tsv"}

_CODE_RE = re.compile(r"^[A-Z]{2}$")


@dataclass(frozen=True)
class Document:
    id: str
    year: int
    title: str = ""
    journal: str = ""
    addresses: tuple[str, ...] = ()
    references: tuple[str, ...] = ()

    def __post_init__(self):
        # accept lists from callers but store tuples so records stay hashable
        object.__setattr__(self, "addresses", tuple(self.addresses))
        object.__setattr__(self, "references", tuple(self.references))

    def to_dict(self):
        return {
            "id": self.id,
            "year": self.year,
            "title": self.title,
            "journal": self.journal,
            "addresses": list(self.addresses),
            "references": list(self.references),
        }


@dataclass(frozen=True)
class GroupingScheme:
    """Country-code to group-label mapping plus a policy for unmapped countries.

    ``unmatched`` is one of ``"drop"`` (ignore the country), ``"error"``
    (raise :class:`UnmatchedCountryError`) or ``"other"`` (send it to the
    ``"Other"`` bucket).
    """

    name: str
    mapping: Mapping[str, str] = field(hash=False)
    unmatched: str = "drop"

    def __post_init__(self):
        if self.unmatched not in POLICIES:
            raise InputError(f"unmatched policy must be one of {POLICIES}, got {self.unmatched!r}")
        for code, label in self.mapping.items():
            if not _CODE_RE.match(code):
                raise InputError(f"scheme {self.name!r}: {code!r} is not a two-letter country code")
            if not label or not label.strip():
                raise InputError(f"scheme {self.name!r}: empty group label for {code}")
        object.__setattr__(self, "mapping", dict(self.mapping))

    @property
    def groups(self) -> tuple[str, ...]:
        """Group labels in order of first appearance, ``Other`` last when enabled."""
        labels = list(dict.fromkeys(self.mapping.values()))
        if self.unmatched == "other" and OTHER_GROUP not in labels:
            labels.append(OTHER_GROUP)
        return tuple(labels)

    def label_for(self, code: str) -> str | None:
        label = self.mapping.get(code)
        if label is not None:
            return label
        if self.unmatched == "error":
            raise UnmatchedCountryError(code, self.name)
        if self.unmatched == "other":
            return OTHER_GROUP
        return None


def _read_tab_pairs(lines: Iterable[str], source: str) -> dict[str, str]:
    pairs: dict[str, str] = {}
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise CorpusFormatError(f"{source}: expected KEY<TAB>VALUE, got {line!r}", lineno)
        key, value = parts[0].strip(), parts[1].strip()
        if key in pairs and pairs[key] != value:
            raise CorpusFormatError(f"{source}: conflicting entries for {key!r}", lineno)
        pairs[key] = value
    return pairs


def _data_text(filename: str) -> str:
    return resources.files("commentropy").joinpath("data", filename).read_text(encoding="utf-8")


def load_scheme(source: str | Path, unmatched: str = "drop", name: str | None = None) -> GroupingScheme:
    """Load a grouping scheme from a ``CODE<TAB>LABEL`` file or a bundled name.

    Bundled names are ``"eu15"`` (one group per member state) and ``"blocs"``
    (EU / Japan / USA).
    """
    key = str(source)
    if key in BUNDLED_SCHEMES:
        text = _data_text(BUNDLED_SCHEMES[key])
        scheme_name = name or key
    else:
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read grouping scheme {path}: {exc}") from None
        scheme_name = name or path.stem
    mapping = _read_tab_pairs(text.splitlines(), scheme_name)
    if not mapping:
        raise InputError(f"grouping scheme {scheme_name!r} is empty")
    return GroupingScheme(scheme_name, mapping, unmatched)


@lru_cache(maxsize=1)
def country_table() -> dict[str, str]:
    """Bundled uppercase country-name -> ISO alpha-2 table."""
    return _read_tab_pairs(_data_text("countries.tsv").splitlines(), "countries.tsv")


def extract_countries(address: str, table: Mapping[str, str] | None = None) -> list[str]:
    """Country codes found in the last comma-separated segment of an address.

    The segment is matched against the name table by its longest matching word
    suffix, so ``"MA 02139 USA"`` resolves through ``"USA"``.
    """
    table = country_table() if table is None else table
    segment = address.rsplit(",", 1)[-1].upper().strip().rstrip(".").strip()
    words = segment.split()
    found: list[str] = []
    for start in range(len(words)):
        code = table.get(" ".join(words[start:]))
        if code is not None:
            found.append(code)
            break
    return list(dict.fromkeys(found))


def document_countries(doc: Document, table: Mapping[str, str] | None = None) -> list[str]:
    codes: list[str] = []
    for address in doc.addresses:
        codes.extend(extract_countries(address, table))
    return list(dict.fromkeys(codes))


def assign_groups(doc: Document, scheme: GroupingScheme, table: Mapping[str, str] | None = None) -> set[str]:
    """Whole counting: the document belongs to every group it has an address in."""
    groups = set()
    for code in document_countries(doc, table):
        label = scheme.label_for(code)
        if label is not None:
            groups.add(label)
    return groups


def _require(record, key, kind, lineno, default=None):
    if key not in record:
        if default is None:
            raise CorpusFormatError(f"missing required field {key!r}", lineno)
        return default
    value = record[key]
    if kind is int:
        ok = isinstance(value, int) and not isinstance(value, bool)
    elif kind is list:
        ok = isinstance(value, list) and all(isinstance(v, str) for v in value)
    else:
        ok = isinstance(value, kind)
    if not ok:
        raise CorpusFormatError(f"field {key!r} has invalid value {value!r}", lineno)
    return value


def _lines(stream) -> Iterable[str]:
    if isinstance(stream, (bytes, bytearray)):
        stream = io.BytesIO(stream)
    elif isinstance(stream, str):
        stream = io.StringIO(stream)
    for line in stream:
        if isinstance(line, (bytes, bytearray)):
            try:
                line = line.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise CorpusFormatError(f"invalid UTF-8: {exc}") from None
        yield line


def parse_corpus(stream, format: str = "jsonl") -> list[Document]:
    """Parse a JSONL corpus (bytes, text, or a file object of either)."""
    if format != "jsonl":
        raise InputError(f"unsupported corpus format {format!r}")
    docs: list[Document] = []
    seen: dict[str, int] = {}
    for lineno, line in enumerate(_lines(stream), 1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusFormatError(f"malformed JSON ({exc.msg})", lineno) from None
        if not isinstance(record, dict):
            raise CorpusFormatError("record is not a JSON object", lineno)
        doc_id = _require(record, "id", str, lineno)
        if not doc_id:
            raise CorpusFormatError("empty id", lineno)
        if doc_id in seen:
            raise DuplicateIdError(doc_id, lineno)
        seen[doc_id] = lineno
        docs.append(
            Document(
                id=doc_id,
                year=_require(record, "year", int, lineno),
                title=_require(record, "title", str, lineno, ""),
                journal=_require(record, "journal", str, lineno, ""),
                addresses=_require(record, "addresses", list, lineno, []),
                references=_require(record, "references", list, lineno, []),
            )
        )
    return docs


def read_corpus(path: str | Path) -> list[Document]:
    with open(path, "rb") as fh:
        return parse_corpus(fh)


def serialize_corpus(docs: Iterable[Document]) -> str:
    return "".join(json.dumps(d.to_dict(), ensure_ascii=False) + "\n" for d in docs)
