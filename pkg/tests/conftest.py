import sys
from pathlib import Path

import numpy as np
import pytest

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

DATA = HERE.parent / "src" / "commentropy" / "data"
FIXTURES = HERE / "fixtures"

_CRITERIA: dict[str, list[tuple[str, str]]] = {}


@pytest.fixture
def toy_path():
    return DATA / "toy3.jsonl"


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        for key in report.keywords:
            if key.startswith("criterion_"):
                _CRITERIA.setdefault(key, []).append((report.nodeid, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda k: int(k.split("_")[1])):
        outcomes = _CRITERIA[key]
        ok = all(o == "passed" for _, o in outcomes)
        failed = [n.split("::")[-1] for n, o in outcomes if o != "passed"]
        line = f"criterion {key.split('_')[1]}: {'PASS' if ok else 'FAIL'} ({len(outcomes)} checks)"
        if failed:
            line += " failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
