"""Upper bounds on the contraction achievable by any (n, k) lattice code."""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

from .errors import BadDims, UnknownDimension
from .lattice import unit_ball_volume

# Densest lattice packing in dimensions 1..3 (interval, hexagonal, FCC).
OPTIMAL_DENSITY = {
    1: 1.0,
    2: math.pi / math.sqrt(12),
    3: math.pi / math.sqrt(18),
}


def _check_dims(n: int, k: int) -> None:
    try:
        n, k = operator.index(n), operator.index(k)
    except TypeError:
        raise BadDims(f"n and k must be integers, got n={n!r}, k={k!r}") from None
    if not 1 <= k <= n:
        raise BadDims(f"need 1 <= k <= n, got n={n}, k={k}")


def trace_bound(n: int, k: int) -> float:
    """Bound on ``beta_min ** (2/k)``; it does not depend on the mother lattice."""
    _check_dims(n, k)
    return k / n


def determinant_bound(mother_density: float, child_density: float, n: int, k: int) -> float:
    """Bound on the geometric-mean contraction ``beta#``.

    Child lattices whose densities have geometric mean ``child_density``
    cannot all keep more than ``child_density / (mother_density * sqrt(C(n,k)))``
    of the mother's packing volume.
    """
    _check_dims(n, k)
    for label, x in (("mother_density", mother_density), ("child_density", child_density)):
        if not 0 < x <= 1:
            raise BadDims(f"{label} must lie in (0, 1], got {x!r}")
    return child_density / (mother_density * math.sqrt(math.comb(n, k)))


def optimal_density(k: int) -> float:
    try:
        return OPTIMAL_DENSITY[k]
    except KeyError:
        raise UnknownDimension(f"no optimal density tabulated for k={k}") from None


def cubic_density(k: int) -> float:
    """Packing density of Z^k."""
    return unit_ball_volume(k) / 2**k


@dataclass(frozen=True)
class BoundsReport:
    n: int
    k: int
    trace_bound: float
    det_bound_beta_geo: float
    det_bound_exponent_2k: float
    mother_density: float
    child_density_assumption: float


def bounds_report(n: int, k: int, mother_density: float, child_density: float) -> BoundsReport:
    det_b = determinant_bound(mother_density, child_density, n, k)
    return BoundsReport(
        n=n,
        k=k,
        trace_bound=trace_bound(n, k),
        det_bound_beta_geo=det_b,
        det_bound_exponent_2k=det_b ** (2 / k),
        mother_density=mother_density,
        child_density_assumption=child_density,
    )
