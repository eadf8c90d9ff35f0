import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE: dict = {}


@contextmanager
def criterion(number: int, title: str, limit: float | None = None):
    """Time a block, record PASS/FAIL for the summary and enforce the time limit."""
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        slow = limit is not None and elapsed >= limit
        status = "PASS" if ok and not slow else "FAIL"
        budget = f" (limit {limit:g}s)" if limit is not None else ""
        line = f"criterion {number:2d}: {status}  {elapsed:6.2f}s{budget}  {title}"
        ACCEPTANCE[number] = line
        print(line)
    assert not slow, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"


@pytest.fixture
def acceptance():
    return criterion


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
