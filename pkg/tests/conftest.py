import time
from contextlib import contextmanager

import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Time a criterion body, record one PASS/FAIL line and enforce its time limit."""

    @contextmanager
    def run(number: int, title: str, limit: float | None = None):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            within = limit is None or elapsed < limit
            verdict = "PASS" if ok and within else "FAIL"
            budget = f" (limit {limit:g}s)" if limit is not None else ""
            line = f"{verdict} criterion {number:2d}: {title} [{elapsed:.2f}s{budget}]"
            ACCEPTANCE_LINES.append(line)
            print(line)
        assert within, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
