import numpy as np
import pytest

# Fixed 3x3 complex matrix with singular values frozen from the
# closed-form cubic oracle in tests/oracles.py.
A3 = np.array([[1 + 2j, -0.5, 0.3j], [2, 1 - 1j, 0.7], [-1j, 0.4 + 0.4j, 3]])
A3_SINGULAR_VALUES = [3.7204942366830807, 2.593858599213581, 1.2569089871958672]
A3_HERMITIAN_EIGVALS = [6.653433196042696, 3.2147229919598126, 0.13184381199749184]  # of A3 + A3^H


@pytest.fixture
def rng():
    return np.random.default_rng(20221216)


def cgauss(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


@pytest.fixture(params=["lapack", "jacobi"])
def method(request):
    return request.param


ACCEPTANCE_LINES = []


@pytest.fixture
def report_line():
    """Record a criterion line; all of them are echoed in the terminal summary."""

    def _report(line):
        ACCEPTANCE_LINES.append(line)
        print("\n" + line)

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
