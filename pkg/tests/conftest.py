import pytest
from hypothesis import settings

from toys import NEGATIVE, POSITIVE, SAME

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def positive():
    return POSITIVE


@pytest.fixture
def negative():
    return NEGATIVE


@pytest.fixture
def same():
    return SAME


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
