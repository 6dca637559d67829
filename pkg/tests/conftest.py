import pytest

from saito.invertible import parse_polynomial

# the polynomials every duality check runs over
CORPUS = [
    "x", "x^2", "x^3", "x^4", "x^5", "x^6", "x^7",
    "x^2 + y^3",
    "x^3 + y^3",
    "x^2*y + y^3",
    "x^2*y + y^2*x",
    "x^2 + y^3 + z^7",
    "x^2*y + y^2*z + z^3",
    "x^3*y + y^3*z + z^3",
    "x^2*y + y^2*z + z^2*x",
]

ACCEPTANCE_LINES = []


@pytest.fixture(params=CORPUS)
def poly(request):
    return parse_polynomial(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
