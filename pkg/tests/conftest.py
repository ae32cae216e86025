import itertools

import numpy as np
import pytest

from lattice_erasure.code import ErasureCode
from lattice_erasure.constructions import NAMES, builtin
from lattice_erasure.lattice import Lattice
from lattice_erasure.rng import stream
from lattice_erasure.search import random_stiefel


def brute_force_shortest_sq(G, box):
    k = G.shape[0]
    U = np.array([u for u in itertools.product(range(-box, box + 1), repeat=k) if any(u)])
    return float(np.min(np.einsum("ij,jk,ik->i", U, G, U)))


def box_suffices(G, radius_sq, box):
    """True when every u with u^T G u <= radius_sq has |u_i| <= box."""
    Gi = np.linalg.inv(G)
    return bool(np.all(np.sqrt(radius_sq * np.diag(Gi)) <= box))


def random_mother(rng, k, lo=-2.0, hi=2.0, min_abs_det=0.1):
    while True:
        V = rng.uniform(lo, hi, (k, k))
        if abs(np.linalg.det(V)) >= min_abs_det:
            return Lattice(V)


def random_code(rng, n, k):
    return ErasureCode(random_stiefel(n, k, rng), random_mother(rng, k))


def random_code_sweep(count=100, seed=2024):
    """``count`` random codes cycling through n in {3,4,5} and every k <= n."""
    dims = [(n, k) for n in (3, 4, 5) for k in range(1, n + 1)]
    rng = stream(seed)
    return [random_code(rng, *dims[i % len(dims)]) for i in range(count)]


@pytest.fixture(scope="session")
def code_sweep():
    return random_code_sweep()


@pytest.fixture(params=NAMES)
def named(request):
    return builtin(request.param)


@pytest.fixture
def code42():
    return builtin("4-2-z2").code


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
