import pytest

from cartier_kit.fields import make_field

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def small_fields():
    return [make_field(2), make_field(3), make_field(5), make_field(7),
            make_field(2, 2), make_field(3, 2), make_field(2, 3)]
