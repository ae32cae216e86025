"""Built-in (4, k) codes with their published figures of merit.

Each construction is assembled from exact expressions (square roots of small
integers) and carries a table of the values it is known to achieve.
:func:`verify_all` recomputes every one of them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import cubic_density, determinant_bound, trace_bound
from .code import CodeReport, ErasureCode, code_report
from .errors import UnknownName
from .lattice import Lattice, determinant, gram

SQ2 = math.sqrt(2)
SQ3 = math.sqrt(3)

# Generator as printed for FCC. Its third column has the wrong sign relative
# to the printed Gram matrix and product phi @ V; flipping it is a unimodular
# change of basis, so the lattice itself is unchanged.
FCC_V_PRINTED = np.array([[-1.0, 1.0, 0.0], [-1.0, -1.0, 1.0], [0.0, 0.0, -1.0]])
FCC_V = FCC_V_PRINTED @ np.diag([1.0, 1.0, -1.0])
FCC_PHI_V = np.array(
    [[1.0, 0.0, 0.0], [2 / 3, 1.0, 1.0], [-2 / 3, 1.0, 0.0], [1 / 3, 0.0, 1.0]]
)
BCC_V = np.array([[1.0, -1.0, 1.0], [-1.0, 1.0, 1.0], [-1.0, -1.0, 1.0]])

MOTHERS = {
    "Z1": np.eye(1),
    "Z2": np.eye(2),
    "Z3": np.eye(3),
    "A2": np.array([[1.0, 0.5], [0.0, SQ3 / 2]]),
    "FCC": FCC_V,
    "BCC": BCC_V,
}


def mother_lattice(name: str) -> Lattice:
    try:
        return Lattice(MOTHERS[name])
    except KeyError:
        raise UnknownName(f"unknown mother lattice {name!r}; known: {sorted(MOTHERS)}") from None


def _phi_4_1():
    return np.full((4, 1), 0.5), np.eye(1)


def _phi_4_2():
    a = 1 / SQ3
    return np.array([[a, a], [a, -a], [a, 0.0], [0.0, a]]), np.eye(2)


def _phi_4_3_cubic():
    a = 0.5
    phi_t = np.array([[a, -a, -a, -a], [a, a, -a, a], [a, -a, a, a]])
    return phi_t.T, np.eye(3)


def _phi_4_3_fcc():
    return FCC_PHI_V @ np.linalg.inv(FCC_V), FCC_V


def _phi_4_3_bcc():
    a = 0.5
    r = math.sqrt(a)
    phi = np.array([[r, a, 0.0], [0.0, a, -r], [0.0, a, r], [r, -a, 0.0]])
    return phi, BCC_V


_BUILDERS = {
    "4-1": _phi_4_1,
    "4-2-z2": _phi_4_2,
    "4-3-cubic": _phi_4_3_cubic,
    "4-3-fcc": _phi_4_3_fcc,
    "4-3-bcc": _phi_4_3_bcc,
}

NAMES = tuple(_BUILDERS)

_A2 = 1 / 3  # a^2 for the (4,2) code
_BCC_D = 9 / 4 - 1 / SQ2

# Child Gram matrices as listed for the (4,2) and cubic (4,3) codes.
GRAMS_4_2 = [
    _A2 * np.array(m, dtype=float)
    for m in ([[2, 0], [0, 2]], [[1, 1], [1, 2]], [[2, 1], [1, 1]],
              [[1, -1], [-1, 2]], [[2, -1], [-1, 1]], [[1, 0], [0, 1]])
]
GRAMS_4_3_CUBIC = [
    np.array(m, dtype=float) / 4
    for m in ([[3, 1, 1], [1, 3, -1], [1, -1, 3]],
              [[3, -1, 1], [-1, 3, 1], [1, 1, 3]],
              [[3, 1, -1], [1, 3, 1], [-1, 1, 3]],
              [[3, -1, -1], [-1, 3, -1], [-1, -1, 3]])
]


def bcc_printed_grams() -> list[np.ndarray]:
    """The d/e/f/g/h/i-patterned child Grams as printed for the BCC code.

    These do not have determinant 4 and disagree with the product of the
    printed frame and generator; they are kept for reference only.
    """
    a = 0.5
    b, c = a + math.sqrt(a), a - math.sqrt(a)
    d, e = 2 * c * c + b * b, 2 * b * b + c * c
    f, g, h, i = -c * c - 2 * b * c, c * c + 2 * b * c, 3 * b * c, -b * b - 2 * b * c
    pats = (
        [[d, f, -g], [f, d, h], [-g, h, e]],
        [[d, -g, f], [-g, e, -h], [f, -h, d]],
        [[e, -g, i], [-g, d, -h], [i, -h, e]],
        [[e, -i, -g], [-i, e, -h], [-g, -h, d]],
    )
    return [np.array(p) for p in pats]


# name -> quantity -> (expected, tolerance); verify_all checks each entry.
TABULATED_VALUES: dict[str, dict[str, tuple[float, float]]] = {
    "4-1": {
        "beta_min_sq": (0.25, 1e-9),
        "trace_bound": (0.25, 1e-9),
        "trace_bound_gap": (0.0, 1e-9),
        "det_bound_gap": (0.0, 1e-9),
    },
    "4-2-z2": {
        "beta_min": (1 / 3, 1e-9),
        "beta_geo": (2 ** (1 / 6) / 3, 1e-9),
        "beta_geo_printed": (0.374, 5e-4),
        "child_gram_multiset_residual": (0.0, 1e-9),
        "children_with_shortest_sq_2a2": (1, 0),
        "children_with_shortest_sq_a2": (5, 0),
        "min_child_density": (math.pi / 4, 1e-9),
        "trace_bound": (0.5, 1e-9),
        "det_bound_z2_children": (1 / math.sqrt(6), 1e-9),
    },
    "4-3-cubic": {
        "child_gram_multiset_residual": (0.0, 1e-9),
        "min_child_density": (math.pi * SQ3 / 8, 1e-9),
        "max_child_density": (math.pi * SQ3 / 8, 1e-9),
        "beta_min_2k": (0.75, 1e-9),
        "trace_bound_gap": (0.0, 1e-9),
    },
    "4-3-fcc": {
        "mother_det": (4.0, 1e-9),
        "mother_density": (math.pi / math.sqrt(18), 1e-9),
        "mother_density_printed": (0.7408, 5e-4),  # printed value is pi/sqrt(18) mis-rounded
        "mother_gram_residual": (0.0, 1e-12),
        "max_child_det_error": (0.0, 1e-9),
        "min_child_shortest": (1.0, 1e-9),
        "max_child_shortest": (1.0, 1e-9),
        "min_child_density": (math.pi / 6, 1e-9),
        "max_child_density": (math.pi / 6, 1e-9),
        "beta_2k": (0.5, 1e-9),
        "det_bound_equality_residual": (0.0, 1e-9),
    },
    "4-3-bcc": {
        "mother_rho_sq": (0.75, 1e-9),
        "mother_density": (math.pi * SQ3 / 8, 1e-9),
        "max_child_det_error": (0.0, 1e-9),
        "min_child_shortest_sq": (_BCC_D, 1e-9),
        "max_child_shortest_sq": (_BCC_D, 1e-9),
        "child_shortest_sq_printed": (1.5429, 5e-5),
        "min_child_density": (math.pi * _BCC_D**1.5 / 12, 1e-9),
        "child_density_printed": (0.5017, 1e-4),
        "beta_2k": (_BCC_D / 3, 1e-9),
        "beta_2k_printed": (0.5143, 5e-5),
    },
}


@dataclass(frozen=True)
class NamedConstruction:
    name: str
    code: ErasureCode
    expected: dict[str, tuple[float, float]] = field(default_factory=dict)


@dataclass(frozen=True)
class CheckResult:
    construction: str
    quantity: str
    expected: float
    actual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return abs(self.actual - self.expected) <= self.tolerance


def builtin(name: str) -> NamedConstruction:
    try:
        build = _BUILDERS[name]
    except KeyError:
        raise UnknownName(f"unknown construction {name!r}; known: {list(NAMES)}") from None
    phi, v = build()
    code = ErasureCode(phi, Lattice(v), name)
    return NamedConstruction(name, code, dict(TABULATED_VALUES[name]))


def gram_multiset_residual(computed, listed) -> float:
    """Smallest max-entry error over all pairings of two lists of matrices."""
    if len(computed) != len(listed):
        return math.inf
    best = math.inf
    for perm in itertools.permutations(range(len(listed))):
        err = max(float(np.max(np.abs(computed[i] - listed[j]))) for i, j in enumerate(perm))
        best = min(best, err)
    return best


def measure(name: str, code: ErasureCode, rep: CodeReport | None = None) -> dict[str, float]:
    """Recompute, for ``code``, every quantity tabulated for ``name``."""
    rep = rep or code_report(code)
    n, k = code.n, code.k
    kids = rep.per_subset
    dens = [r.density for r in kids]
    short = [r.shortest_sq for r in kids]
    dets = [r.det for r in kids]
    mother_dens = rep.mother_density
    out: dict[str, float] = {
        "beta_min": rep.beta_min,
        "beta_min_sq": rep.beta_min**2,
        "beta_geo": rep.beta_geo,
        "beta_geo_printed": rep.beta_geo,
        "beta_min_2k": rep.beta_min_2k,
        "beta_2k": rep.beta_min_2k,
        "beta_2k_printed": rep.beta_min_2k,
        "trace_bound": trace_bound(n, k),
        "trace_bound_gap": trace_bound(n, k) - rep.beta_min_2k,
        "min_child_density": min(dens),
        "max_child_density": max(dens),
        "child_density_printed": min(dens),
        "min_child_shortest_sq": min(short),
        "max_child_shortest_sq": max(short),
        "child_shortest_sq_printed": min(short),
        "min_child_shortest": math.sqrt(min(short)),
        "max_child_shortest": math.sqrt(max(short)),
        "mother_det": determinant(code.mother),
        "mother_density": mother_dens,
        "mother_density_printed": mother_dens,
        "mother_rho_sq": rep.mother_rho**2,
    }
    det_b = determinant_bound(mother_dens, rep.density_geo, n, k)
    out["det_bound_gap"] = det_b - rep.beta_geo
    out["det_bound_equality_residual"] = abs(det_b - rep.beta_geo)
    if name == "4-2-z2":
        out["child_gram_multiset_residual"] = gram_multiset_residual(
            [r.gram for r in kids], GRAMS_4_2
        )
        out["children_with_shortest_sq_2a2"] = sum(abs(s - 2 * _A2) < 1e-9 for s in short)
        out["children_with_shortest_sq_a2"] = sum(abs(s - _A2) < 1e-9 for s in short)
        out["det_bound_z2_children"] = determinant_bound(mother_dens, cubic_density(2), n, k)
    elif name == "4-3-cubic":
        out["child_gram_multiset_residual"] = gram_multiset_residual(
            [r.gram for r in kids], GRAMS_4_3_CUBIC
        )
    elif name == "4-3-fcc":
        out["mother_gram_residual"] = float(
            np.max(np.abs(gram(code.mother) - np.array([[2, 0, 1], [0, 2, 1], [1, 1, 2]])))
        )
        out["max_child_det_error"] = max(abs(d - 1.0) for d in dets)
    elif name == "4-3-bcc":
        out["max_child_det_error"] = max(abs(d - 4.0) for d in dets)
    return out


def verify(nc: NamedConstruction) -> list[CheckResult]:
    got = measure(nc.name, nc.code)
    return [
        CheckResult(nc.name, q, float(exp), float(got[q]), float(tol))
        for q, (exp, tol) in nc.expected.items()
    ]


def verify_all() -> list[CheckResult]:
    """Instantiate every built-in and compare each tabulated value."""
    results = []
    for name in NAMES:
        results.extend(verify(builtin(name)))
    return results
