import random

import pytest

from satogr.field import GF, QQ
from satogr.maya import index_set
from satogr.points import GrassPoint


def S(*elements):
    """Index set of level len(elements)."""
    return index_set(len(elements), tuple(elements))


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def worked_point():
    """Rows e_{-2} + e_0 and e_{-1} + e_1 at level 2."""
    return GrassPoint.spanned_by(2, QQ, [{-2: 1, 0: 1}, {-1: 1, 1: 1}])


@pytest.fixture
def F2():
    return GF(2)


@pytest.fixture
def F3():
    return GF(3)


_criteria: list[str] = []


@pytest.fixture
def criterion():
    """Time a block against a limit and record a PASS/FAIL line for the summary."""
    import contextlib
    import time

    @contextlib.contextmanager
    def run(number: int, title: str, limit: float):
        start = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - start
            ok = elapsed < limit
            assert ok, f"criterion {number} took {elapsed:.1f}s, limit {limit:.0f}s"
        finally:
            elapsed = time.perf_counter() - start
            line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {elapsed:6.2f}s / {limit:.0f}s  {title}"
            _criteria.append(line)
            print(line)

    return run


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_criteria):
            terminalreporter.write_line(line)
