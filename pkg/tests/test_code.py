import json
import math

import numpy as np
import pytest

from lattice_erasure.bounds import determinant_bound, trace_bound
from lattice_erasure.code import (
    ErasureCode,
    child_lattice,
    code_from_dict,
    code_report,
    code_to_dict,
    load_code,
    save_code,
    verify_cauchy_binet,
    verify_phi_sum,
)
from lattice_erasure.constructions import builtin
from lattice_erasure.errors import BadSubset, InvalidCode, ReducedRank
from lattice_erasure.lattice import Lattice, gram
from lattice_erasure.rng import stream
from lattice_erasure.search import random_stiefel

A2 = 1 / 3


def test_child_lattice_examples(code42):
    np.testing.assert_allclose(gram(child_lattice(code42, [1, 2])), 2 * A2 * np.eye(2), atol=1e-12)
    np.testing.assert_allclose(gram(child_lattice(code42, [3, 4])), A2 * np.eye(2), atol=1e-12)
    square = ErasureCode(np.eye(3), Lattice(np.eye(3)))
    np.testing.assert_array_equal(child_lattice(square, (1, 2, 3)).generator, np.eye(3))


def test_child_lattice_bad_subsets(code42):
    for s in ([1], [1, 2, 3], [0, 1], [1, 5], [2, 2]):
        with pytest.raises(BadSubset):
            child_lattice(code42, s)


def test_reduced_rank_child():
    # frame with a zero row pair: erasing down to rows 3,4 loses rank
    phi = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0], [0.0, 0.0]])
    code = ErasureCode(phi, Lattice(np.eye(2)))
    with pytest.raises(ReducedRank):
        child_lattice(code, (3, 4))
    rep = code_report(code)
    assert rep.beta_min == 0.0
    assert rep.beta_geo == 0.0
    bad = [r for r in rep.per_subset if r.rank_deficient]
    assert [r.subset for r in bad] == [(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


def test_report_examples():
    rep = code_report(builtin("4-2-z2").code)
    assert rep.beta_min == pytest.approx(1 / 3, abs=1e-9)
    assert rep.beta_geo == pytest.approx(2 ** (1 / 6) / 3, abs=1e-9)
    assert [r.subset for r in rep.per_subset] == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    assert code_report(builtin("4-1").code).beta_min ** 2 == pytest.approx(0.25, abs=1e-9)
    assert code_report(builtin("4-3-fcc").code).beta_min_2k == pytest.approx(0.5, abs=1e-9)


def test_subset_report_beta_definition(named):
    rep = code_report(named.code)
    for r in rep.per_subset:
        rho = math.sqrt(r.shortest_sq) / 2
        assert r.beta == pytest.approx((rho / rep.mother_rho) ** named.code.k, abs=1e-9)
    assert len(rep.per_subset) == math.comb(named.code.n, named.code.k)


def test_report_is_bit_identical(code42):
    a, b = code_report(code42), code_report(code42)
    for x, y in zip(a.per_subset, b.per_subset):
        assert x.subset == y.subset
        assert x.gram.tobytes() == y.gram.tobytes()
        assert (x.det, x.shortest_sq, x.beta, x.density) == (y.det, y.shortest_sq, y.beta, y.density)
    assert (a.beta_min, a.beta_geo) == (b.beta_min, b.beta_geo)


@pytest.mark.parametrize("name", ["4-2-z2", "4-3-cubic", "4-1"])
def test_identities_on_builtins(name):
    code = builtin(name).code
    assert verify_cauchy_binet(code) < 1e-8
    assert verify_phi_sum(code) < 1e-9


def test_phi_sum_values():
    for name, mult in (("4-2-z2", 3), ("4-3-cubic", 3), ("4-1", 1)):
        code = builtin(name).code
        acc = sum(code.phi[[i - 1 for i in s]].T @ code.phi[[i - 1 for i in s]] for s in code.subsets())
        np.testing.assert_allclose(acc, mult * np.eye(code.k), atol=1e-12)


def test_identities_random_5_2():
    rng = stream(5)
    code = ErasureCode(random_stiefel(5, 2, rng), Lattice(rng.uniform(-2, 2, (2, 2)) + np.eye(2)))
    assert verify_cauchy_binet(code) < 1e-8


def test_identity_and_bound_sweep(code_sweep):
    for code in code_sweep:
        rep = code_report(code)
        assert verify_cauchy_binet(code) < 1e-8
        assert verify_phi_sum(code) < 1e-9
        assert rep.beta_min_2k <= trace_bound(code.n, code.k) + 1e-9
        det_b = determinant_bound(rep.mother_density, rep.density_geo, code.n, code.k)
        assert rep.beta_geo <= det_b + 1e-9


def test_determinant_bound_equality_iff_equal_dets():
    fcc = code_report(builtin("4-3-fcc").code)
    dets = [r.det for r in fcc.per_subset]
    assert max(dets) - min(dets) < 1e-9
    b = determinant_bound(fcc.mother_density, fcc.density_geo, 4, 3)
    assert abs(b - fcc.beta_geo) < 1e-9

    z2 = code_report(builtin("4-2-z2").code)
    dets = [r.det for r in z2.per_subset]
    assert max(dets) - min(dets) > 0.1
    b = determinant_bound(z2.mother_density, z2.density_geo, 4, 2)
    assert b - z2.beta_geo > 1e-3


def test_code_invariants_enforced():
    with pytest.raises(InvalidCode):
        ErasureCode(np.ones((4, 2)), Lattice(np.eye(2)))
    with pytest.raises(InvalidCode):
        ErasureCode(np.eye(2), Lattice(np.eye(3)))
    with pytest.raises(InvalidCode):
        ErasureCode(np.eye(3)[:2], Lattice(np.eye(3)))


def test_file_round_trip(tmp_path, named):
    p = tmp_path / "code.json"
    save_code(named.code, p)
    doc = json.loads(p.read_text())
    assert set(doc) == {"n", "k", "phi", "v", "name"}
    assert len(doc["phi"]) == doc["n"] * doc["k"]
    back = load_code(p)
    np.testing.assert_array_equal(back.phi, named.code.phi)
    np.testing.assert_array_equal(back.V, named.code.V)
    assert back.name == named.name


def test_file_rounded_entries_reorthonormalised(code42):
    d = code_to_dict(code42)
    d["phi"] = [round(x, 7) for x in d["phi"]]
    code = code_from_dict(d)
    assert np.max(np.abs(code.phi.T @ code.phi - np.eye(2))) < 1e-12
    np.testing.assert_allclose(code.phi, code42.phi, atol=1e-6)


def test_file_rejects_bad_frames(code42):
    d = code_to_dict(code42)
    d["phi"] = [round(x, 3) for x in d["phi"]]
    with pytest.raises(InvalidCode, match="orthonormal"):
        code_from_dict(d)
    with pytest.raises(InvalidCode):
        code_from_dict({"n": 4, "k": 2, "phi": [0.0] * 7, "v": [1, 0, 0, 1]})
    with pytest.raises(InvalidCode):
        code_from_dict({"n": 2, "k": 2, "phi": [1, 0, 0, 1], "v": [1, 2, 2, 4]})
    with pytest.raises(InvalidCode):
        code_from_dict({"k": 2})
