import pytest
from graphs import path_with_chord, star

from centdian.graph import metric_closure


@pytest.fixture
def chord_dm():
    return metric_closure(path_with_chord())


@pytest.fixture
def star4_dm():
    return metric_closure(star(4))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
