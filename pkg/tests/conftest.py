import pytest

from mmdivider.divider import DividerSpec, synthesize_divider
from mmdivider.kernels import BACKENDS
from mmdivider.rfcore import rogers3003


@pytest.fixture(scope="session")
def roger():
    return rogers3003()


@pytest.fixture(scope="session")
def lossless_design(roger):
    return synthesize_divider(DividerSpec(28e9, roger.lossless()))


@pytest.fixture(scope="session")
def lossy_design(roger):
    return synthesize_divider(DividerSpec(28e9, roger))


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return request.param


ACCEPTANCE_LINES = {}


@pytest.fixture
def criterion():
    """Record a PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(number, title, ok, detail):
        ACCEPTANCE_LINES[number] = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}: {detail}"
        print(ACCEPTANCE_LINES[number])
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
