import pytest

from zetarecip import DEFAULT_EVALUATOR, build_moebius, load_zeros
from zetarecip.zetafn import bundled_zeros_path


@pytest.fixture(scope="session")
def table():
    return build_moebius(10**7)


@pytest.fixture(scope="session")
def small_table():
    return build_moebius(10**5)


@pytest.fixture(scope="session")
def ev():
    return DEFAULT_EVALUATOR


@pytest.fixture(scope="session")
def zeros():
    return load_zeros(bundled_zeros_path())


_ACCEPTANCE = []


@pytest.fixture
def acceptance_log():
    """Collects one summary line per acceptance criterion."""
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE:
        terminalreporter.write_line(line)
