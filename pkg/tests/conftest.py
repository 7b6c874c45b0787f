import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from weyl_lines.chow import CurveClass, DivisorClass, SpaceParams  # noqa: E402

_criteria = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.outcome != "passed":
        prev = _criteria.get(name, "PASS")
        _criteria[name] = "FAIL" if report.outcome == "failed" or prev == "FAIL" else (
            "SKIP" if report.outcome == "skipped" else "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        terminalreporter.write_line(f"{_criteria[name]}  {name}")


def spaces(max_r=6, max_extra=6, min_extra=1):
    return st.integers(2, max_r).flatmap(
        lambda r: st.integers(r + min_extra, r + max_extra).map(lambda s: SpaceParams(r, s))
    )


def curve_classes(space, lo=-6, hi=6):
    return st.builds(
        lambda d, m: CurveClass(space, d, m),
        st.integers(lo, 3 * hi),
        st.lists(st.integers(lo, hi), min_size=space.s, max_size=space.s),
    )


def divisor_classes(space, lo=-6, hi=6):
    return st.builds(
        lambda d, m: DivisorClass(space, d, m),
        st.integers(lo, 3 * hi),
        st.lists(st.integers(lo, hi), min_size=space.s, max_size=space.s),
    )


def index_sets(space):
    return st.lists(
        st.integers(1, space.s), min_size=space.r + 1, max_size=space.r + 1, unique=True
    ).map(lambda xs: tuple(sorted(xs)))


@pytest.fixture
def p3_11():
    return SpaceParams(3, 11)
