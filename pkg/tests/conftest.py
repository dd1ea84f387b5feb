import numpy as np
import pytest

from fixedmargin.labkit import enumerate_margin_fixed

# all five 3x3 configurations with row and column totals [1, 2, 1]
SMALL_MARGINS = ([1, 2, 1], [1, 2, 1])


@pytest.fixture(scope="session")
def small3_configs():
    return enumerate_margin_fixed(SMALL_MARGINS)


@pytest.fixture
def small3_matrix():
    return np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.uint8)


@pytest.fixture
def identity2():
    return np.eye(2, dtype=np.uint8)


def random_matrix(rng, max_rows=50, max_cols=50, fill=None):
    n_rows = int(rng.integers(1, max_rows + 1))
    n_cols = int(rng.integers(1, max_cols + 1))
    if fill is None:
        fill = rng.random()
    return (rng.random((n_rows, n_cols)) < fill).astype(np.uint8)


# one verdict line per acceptance criterion, printed after the run
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[key])
