"""Small-rank lattice primitives.

Lattices are given by a generator matrix whose *columns* are basis vectors,
so the lattice is ``{B @ u : u in Z^k}`` and its Gram matrix is ``B.T @ B``.
Shortest and closest vectors are found exactly by depth-first enumeration
(Fincke-Pohst with Schnorr-Euchner ordering), which is practical up to
rank 8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionTooLarge, NumericallySingular

RANK_TOLERANCE = 1e-10
MAX_ENUM_RANK = 8
TIE_TOLERANCE = 1e-9


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce ``a`` to a finite 2-D float array."""
    m = np.array(a, dtype=float)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


@dataclass(frozen=True)
class Lattice:
    """Lattice spanned by the columns of an ``m x k`` generator (``m >= k``)."""

    generator: np.ndarray
    _gram: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        g = as_matrix(self.generator, "generator")
        m, k = g.shape
        if m < k:
            raise NumericallySingular(f"generator is {m}x{k}; needs m >= k")
        g.setflags(write=False)
        object.__setattr__(self, "generator", g)
        gram = g.T @ g
        gram.setflags(write=False)
        object.__setattr__(self, "_gram", gram)
        d = float(np.linalg.det(gram))
        if not d > RANK_TOLERANCE:
            raise NumericallySingular(f"det(Gram) = {d:.3e} <= {RANK_TOLERANCE:g}")

    @property
    def rank(self) -> int:
        return self.generator.shape[1]

    @property
    def dim(self) -> int:
        return self.generator.shape[0]

    def scaled(self, c: float) -> "Lattice":
        return Lattice(c * self.generator)

    def __eq__(self, other):
        return isinstance(other, Lattice) and np.array_equal(self.generator, other.generator)

    def __hash__(self):
        return hash(self.generator.tobytes())


@dataclass(frozen=True)
class ShortestVectorResult:
    coeffs: tuple[int, ...]
    squared_length: float

    @property
    def length(self) -> float:
        return math.sqrt(self.squared_length)


def gram(lat: Lattice) -> np.ndarray:
    return lat._gram.copy()


def determinant(lat: Lattice) -> float:
    """Determinant of the Gram matrix (the squared covolume)."""
    d = float(np.linalg.det(lat._gram))
    if not d > RANK_TOLERANCE:
        raise NumericallySingular(f"det(Gram) = {d:.3e}")
    return d


def _check_rank(k: int) -> None:
    if k > MAX_ENUM_RANK:
        raise DimensionTooLarge(f"enumeration supports rank <= {MAX_ENUM_RANK}, got {k}")


def _cholesky_upper(G) -> list[list[float]]:
    """Upper-triangular R with R^T R = G, in plain Python (k is tiny)."""
    k = len(G)
    R = [[0.0] * k for _ in range(k)]
    for j in range(k):
        acc = G[j][j] - sum(R[t][j] ** 2 for t in range(j))
        if acc <= 0:
            raise NumericallySingular("Gram matrix is not positive definite")
        rjj = math.sqrt(acc)
        R[j][j] = rjj
        for i in range(j + 1, k):
            R[j][i] = (G[j][i] - sum(R[t][j] * R[t][i] for t in range(j))) / rjj
    return R


def _enumerate(R, center, bound: float, on_leaf) -> None:
    """Visit integer ``u`` with ``||R (u - center)||^2 <= bound``.

    ``R`` is upper triangular. ``on_leaf(u, dist)`` is called for every leaf
    and returns the (possibly tightened) bound for the rest of the search.
    Siblings are visited in order of distance from the level's projected
    center, so each level can stop at the first child that overshoots.
    """
    k = len(R)
    rsq = [float(R[i][i]) ** 2 for i in range(k)]
    mu = [[float(R[i][j]) / float(R[i][i]) for j in range(k)] for i in range(k)]
    c = [float(x) for x in center]
    u = [0] * k
    state = [bound]

    def rec(i: int, partial: float) -> None:
        ci = c[i]
        row = mu[i]
        for j in range(i + 1, k):
            ci -= row[j] * (u[j] - c[j])
        r2 = rsq[i]
        up = math.ceil(ci)
        down = up - 1
        while True:
            if up - ci <= ci - down:
                x = up
                up += 1
            else:
                x = down
                down -= 1
            d = partial + r2 * (x - ci) ** 2
            if d > state[0]:
                return
            u[i] = x
            if i == 0:
                state[0] = on_leaf(u, d)
            else:
                rec(i - 1, d)

    rec(k - 1, 0.0)


def shortest_from_gram(G) -> ShortestVectorResult:
    """Shortest nonzero vector of the lattice with Gram matrix ``G``."""
    G = [[float(x) for x in row] for row in G]
    k = len(G)
    _check_rank(k)
    R = _cholesky_upper(G)
    diag = [G[i][i] for i in range(k)]
    j = min(range(k), key=diag.__getitem__)
    best_u = [0] * k
    best_u[j] = 1
    best = [diag[j]]

    def leaf(u, d):
        if d < best[0] * (1 - 1e-12) and any(u):
            best[0] = d
            best_u[:] = u
        return best[0]

    _enumerate(R, [0.0] * k, best[0] * (1 + 1e-9), leaf)
    u = best_u
    first = next(x for x in u if x)
    if first < 0:
        u = [-x for x in u]
    sq = sum(u[a] * G[a][b] * u[b] for a in range(k) for b in range(k))
    return ShortestVectorResult(tuple(u), float(sq))


def shortest_vector(lat: Lattice) -> ShortestVectorResult:
    """Exact shortest nonzero vector by enumeration.

    The search radius starts at the smallest diagonal Gram entry and shrinks
    whenever a shorter vector turns up. The returned coefficients have a
    positive first nonzero entry.
    """
    _check_rank(lat.rank)
    return shortest_from_gram(lat._gram)


def packing_radius(lat: Lattice) -> float:
    return math.sqrt(shortest_vector(lat).squared_length) / 2


def unit_ball_volume(k: int) -> float:
    if k < 1:
        raise ValueError("k must be >= 1")
    return math.pi ** (k / 2) / math.gamma(k / 2 + 1)


def packing_density(lat: Lattice) -> float:
    """Fraction of space covered by balls of the packing radius."""
    k = lat.rank
    return unit_ball_volume(k) * packing_radius(lat) ** k / math.sqrt(determinant(lat))


def closest_vector(lat: Lattice, target) -> tuple[int, ...]:
    """Coefficients of the lattice point nearest ``target``.

    Exact ties (within 1e-9 in squared distance) resolve to the
    lexicographically smallest coefficient vector.
    """
    k = lat.rank
    _check_rank(k)
    t = np.asarray(target, dtype=float).reshape(-1)
    if t.shape[0] != lat.dim:
        raise ValueError(f"target has length {t.shape[0]}, expected {lat.dim}")
    Q, R = np.linalg.qr(lat.generator)
    center = np.linalg.solve(R, Q.T @ t)

    # Babai rounding gives a valid starting radius
    start = np.rint(center)
    r0 = float(np.sum((R @ (start - center)) ** 2))
    cands: list[tuple[float, tuple[int, ...]]] = []
    best = [r0]

    def leaf(u, d):
        if d < best[0]:
            best[0] = d
        cands.append((d, tuple(u)))
        return best[0] + TIE_TOLERANCE * max(1.0, best[0])

    _enumerate(R.tolist(), center, r0 + TIE_TOLERANCE * max(1.0, r0), leaf)
    if not cands:
        return tuple(int(x) for x in start)
    lim = best[0] + TIE_TOLERANCE * max(1.0, best[0])
    return min(u for d, u in cands if d <= lim)
