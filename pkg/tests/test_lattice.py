import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_erasure.constructions import BCC_V, FCC_V, FCC_V_PRINTED
from lattice_erasure.errors import DimensionTooLarge, NumericallySingular
from lattice_erasure.lattice import (
    Lattice,
    closest_vector,
    determinant,
    gram,
    packing_density,
    packing_radius,
    shortest_vector,
    unit_ball_volume,
)
from lattice_erasure.rng import stream

from conftest import box_suffices, brute_force_shortest_sq


def brute_force_cvp(B, t, box):
    k = B.shape[1]
    best = None
    for u in itertools.product(range(-box, box + 1), repeat=k):
        d = float(np.sum((t - B @ np.array(u)) ** 2))
        if best is None or d < best[0] - 1e-9:
            best = (d, u)
    return best[1]


def test_gram_identity():
    np.testing.assert_array_equal(gram(Lattice(np.eye(2))), np.eye(2))


def test_gram_fcc_and_bcc():
    np.testing.assert_array_equal(gram(Lattice(FCC_V)), [[2, 0, 1], [0, 2, 1], [1, 1, 2]])
    np.testing.assert_array_equal(gram(Lattice(BCC_V)), [[3, -1, -1], [-1, 3, -1], [-1, -1, 3]])


def test_printed_fcc_generator_spans_same_lattice():
    # V_printed^-1 V is an integer matrix of determinant +-1
    T = np.linalg.solve(FCC_V_PRINTED, FCC_V)
    np.testing.assert_allclose(T, np.rint(T), atol=1e-12)
    assert abs(abs(np.linalg.det(T)) - 1) < 1e-12


def test_determinant_values():
    assert determinant(Lattice(np.eye(3))) == pytest.approx(1.0, abs=1e-12)
    assert determinant(Lattice(FCC_V)) == pytest.approx(4.0, abs=1e-9)


def test_singular_generator_rejected():
    with pytest.raises(NumericallySingular):
        Lattice([[1.0, 2.0], [2.0, 4.0]])
    with pytest.raises(NumericallySingular):
        Lattice(np.zeros((1, 2)))
    with pytest.raises(ValueError):
        Lattice([[np.nan]])


def test_shortest_vector_examples():
    assert shortest_vector(Lattice(np.eye(3))).squared_length == 1.0
    G = gram(Lattice(FCC_V))
    assert shortest_vector(Lattice(FCC_V)).squared_length == pytest.approx(
        brute_force_shortest_sq(G, 4), abs=1e-12
    )
    assert brute_force_shortest_sq(G, 4) == 2.0
    assert shortest_vector(Lattice(BCC_V)).squared_length == pytest.approx(3.0, abs=1e-12)


def test_shortest_vector_sign_and_consistency():
    lat = Lattice([[1.0, 0.3], [0.0, -2.0]])
    res = shortest_vector(lat)
    first = next(c for c in res.coeffs if c)
    assert first > 0
    u = np.array(res.coeffs)
    assert res.squared_length == pytest.approx(float(u @ gram(lat) @ u), rel=1e-9)


def test_rank_limit():
    with pytest.raises(DimensionTooLarge):
        shortest_vector(Lattice(np.eye(9)))
    with pytest.raises(DimensionTooLarge):
        closest_vector(Lattice(np.eye(9)), np.zeros(9))
    assert shortest_vector(Lattice(np.eye(8))).squared_length == 1.0


def test_packing_radius_examples():
    assert packing_radius(Lattice(np.eye(2))) == 0.5
    assert packing_radius(Lattice(BCC_V)) == pytest.approx(math.sqrt(3) / 2, abs=1e-12)
    a = 1 / math.sqrt(3)
    child = Lattice(np.array([[a, 0.0], [0.0, a]]))
    expect = math.sqrt(brute_force_shortest_sq(gram(child), 3)) / 2
    assert packing_radius(child) == pytest.approx(expect, abs=1e-12)
    assert expect == pytest.approx(1 / (2 * math.sqrt(3)), abs=1e-12)


@pytest.mark.parametrize("k, vol", [(1, 2.0), (2, math.pi), (3, 4 * math.pi / 3)])
def test_unit_ball_volume(k, vol):
    assert unit_ball_volume(k) == pytest.approx(vol, rel=1e-14)


def test_packing_density_examples():
    assert packing_density(Lattice(np.eye(2))) == pytest.approx(math.pi / 4, abs=1e-12)
    assert packing_density(Lattice(FCC_V)) == pytest.approx(math.pi / math.sqrt(18), abs=1e-12)


def test_closest_vector_examples():
    assert closest_vector(Lattice([[1.0]]), [0.5]) == (0,)
    assert closest_vector(Lattice(np.eye(2)), [0.6, -0.4]) == (1, 0)
    assert brute_force_cvp(np.eye(2), np.array([0.6, -0.4]), 3) == (1, 0)
    B = np.array([[1.0, 0.4, -0.2], [0.1, 1.3, 0.5], [0.0, 0.2, 0.9], [0.3, 0.0, 0.1]])
    u0 = (2, -3, 1)
    assert closest_vector(Lattice(B), B @ np.array(u0)) == u0


def test_closest_vector_tie_is_lexicographic():
    # (0.5, 0.5) is equidistant from four points of Z^2
    assert closest_vector(Lattice(np.eye(2)), [0.5, 0.5]) == (0, 0)
    assert closest_vector(Lattice(np.eye(2)), [-0.5, 0.5]) == (-1, 0)


def test_svp_matches_brute_force_random():
    rng = stream(11)
    checked = 0
    while checked < 200:
        k = int(rng.integers(1, 5))
        V = rng.uniform(-2, 2, (k, k))
        try:
            lat = Lattice(V)
        except NumericallySingular:
            continue
        G = gram(lat)
        if not box_suffices(G, float(np.min(np.diag(G))), 5):
            continue
        got = shortest_vector(lat).squared_length
        assert got == pytest.approx(brute_force_shortest_sq(G, 5), rel=1e-9)
        checked += 1


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), c=st.sampled_from([0.5, 3.0]))
def test_scaling(seed, c):
    rng = stream(seed)
    k = int(rng.integers(1, 4))
    lat = Lattice(rng.uniform(-2, 2, (k, k)) + 3 * np.eye(k))
    assert packing_radius(lat.scaled(c)) == pytest.approx(abs(c) * packing_radius(lat), rel=1e-9)
    assert determinant(lat.scaled(c)) == pytest.approx(c ** (2 * k) * determinant(lat), rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_density_rotation_invariant(seed):
    rng = stream(seed)
    k = int(rng.integers(1, 5))
    m = k + int(rng.integers(0, 3))
    B = rng.uniform(-2, 2, (m, k)) + np.vstack([2 * np.eye(k), np.zeros((m - k, k))])
    Q, R = np.linalg.qr(rng.standard_normal((m, m)))
    Q = Q * np.sign(np.diag(R))
    a = packing_density(Lattice(B))
    b = packing_density(Lattice(Q @ B))
    assert b == pytest.approx(a, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_cvp_translation_equivariance(seed):
    rng = stream(seed)
    k = int(rng.integers(1, 4))
    B = rng.uniform(-1, 1, (k, k)) + 2 * np.eye(k)
    lat = Lattice(B)
    t = rng.uniform(-3, 3, k)
    u0 = rng.integers(-4, 5, k)
    base = np.array(closest_vector(lat, t))
    # skip targets sitting (numerically) on a Voronoi boundary
    d = np.sum((t - B @ base) ** 2)
    for e in itertools.product((-1, 0, 1), repeat=k):
        if any(e):
            if abs(np.sum((t - B @ (base + np.array(e))) ** 2) - d) < 1e-6:
                return
    moved = np.array(closest_vector(lat, t + B @ u0))
    np.testing.assert_array_equal(moved, base + u0)
