import time

import pytest

_LINES: list[str] = []


class _Criterion:
    def __init__(self, number: int, title: str, budget: float):
        self.number, self.title, self.budget = number, title, budget
        self.start = time.perf_counter()

    def finish(self, ok: bool, detail: str = "") -> None:
        elapsed = time.perf_counter() - self.start
        in_time = elapsed < self.budget
        status = "PASS" if ok and in_time else "FAIL"
        line = f"criterion {self.number:>2} {status}  {self.title}  [{elapsed:.2f}s / {self.budget:g}s]"
        if detail:
            line += f"  {detail}"
        if not in_time:
            line += "  (over time budget)"
        _LINES.append(line)
        print(line)
        assert in_time, f"took {elapsed:.2f}s, budget {self.budget}s"
        assert ok, detail


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
