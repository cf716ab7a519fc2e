import itertools

import numpy as np
import pytest

from complexon import build_complex

ACCEPTANCE_LINES = []


def random_complex(rng, n, max_dim, n_top=None, p_extra=0.3):
    """Closure of a few random simplices of dimension <= max_dim on n nodes."""
    n_top = rng.integers(1, 5) if n_top is None else n_top
    simplices = []
    for _ in range(n_top):
        k = int(rng.integers(2, min(max_dim + 1, n) + 1))
        simplices.append(rng.choice(np.arange(1, n + 1), size=k, replace=False).tolist())
    for a, b in itertools.combinations(range(1, n + 1), 2):
        if rng.random() < p_extra:
            simplices.append([a, b])
    return build_complex(n, simplices)


def random_step_table(rng, n, d, binary=False):
    """Symmetric array of shape (n,)*(d+1) with values in [0, 1]."""
    t = rng.random((n,) * (d + 1))
    # read every cell from its sorted-index representative
    sym = t[tuple(np.sort(np.indices(t.shape), axis=0))]
    if binary:
        sym = (sym > 0.5).astype(float)
    return sym


@pytest.fixture
def filled_triangle():
    return build_complex(3, [{1, 2, 3}])


@pytest.fixture
def hollow_triangle():
    return build_complex(3, [{1, 2}, {2, 3}, {1, 3}])


@pytest.fixture
def tetrahedron():
    return build_complex(4, [{1, 2, 3, 4}])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
