import pytest

from nestedsat import kernels

INTRO = [[1, -2, 3], [-1, -3], [-1, 2, 3], [-1, -3], [1, 2]]
TRIANGLE = [[1, 2], [2, 3], [1, 3]]
ALL_FOUR = [[1, 2], [-1, 2], [1, -2], [-1, -2]]


@pytest.fixture(params=kernels.available())
def backend(request):
    return request.param


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(label: str, ok: bool, detail: str = ""):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip())
        assert ok, f"{label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
