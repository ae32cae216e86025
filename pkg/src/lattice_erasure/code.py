"""The (n, k) lattice erasure code and its per-erasure-pattern analysis.

A code embeds a rank-k mother lattice ``V Z^k`` into R^n through an
orthonormal frame ``phi`` (n x k). Keeping only the coordinates in a
k-subset ``S`` leaves the child lattice generated by ``phi[S] @ V``.
Subsets are 1-based and always enumerated in lexicographic order.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import BadSubset, InvalidCode, NumericallySingular, ReducedRank
from .lattice import (
    RANK_TOLERANCE,
    Lattice,
    as_matrix,
    packing_density,
    packing_radius,
    shortest_from_gram,
    unit_ball_volume,
)

ORTHO_TOL = 1e-9
FILE_ORTHO_TOL = 1e-6


def orthonormality_residual(phi: np.ndarray) -> float:
    k = phi.shape[1]
    return float(np.max(np.abs(phi.T @ phi - np.eye(k))))


@dataclass(frozen=True, eq=False)
class ErasureCode:
    phi: np.ndarray
    mother: Lattice
    name: str | None = None

    def __post_init__(self):
        phi = as_matrix(self.phi, "phi")
        n, k = phi.shape
        if k > n:
            raise InvalidCode(f"k = {k} exceeds n = {n}")
        if not isinstance(self.mother, Lattice):
            object.__setattr__(self, "mother", Lattice(self.mother))
        if self.mother.generator.shape != (k, k):
            raise InvalidCode(
                f"mother generator must be {k}x{k}, got {self.mother.generator.shape}"
            )
        res = orthonormality_residual(phi)
        if res > ORTHO_TOL:
            raise InvalidCode(f"phi columns not orthonormal (max |phi^T phi - I| = {res:.3e})")
        phi.setflags(write=False)
        object.__setattr__(self, "phi", phi)

    @property
    def n(self) -> int:
        return self.phi.shape[0]

    @property
    def k(self) -> int:
        return self.phi.shape[1]

    @property
    def V(self) -> np.ndarray:
        return self.mother.generator

    def subsets(self) -> list[tuple[int, ...]]:
        return all_subsets(self.n, self.k)

    def with_phi(self, phi) -> "ErasureCode":
        return ErasureCode(phi, self.mother, self.name)

    def scaled(self, c: float) -> "ErasureCode":
        return ErasureCode(self.phi, self.mother.scaled(c), self.name)


@dataclass(frozen=True)
class SubsetReport:
    subset: tuple[int, ...]
    gram: np.ndarray
    det: float
    shortest_sq: float
    beta: float
    density: float

    @property
    def rank_deficient(self) -> bool:
        return self.beta == 0.0


@dataclass(frozen=True)
class CodeReport:
    n: int
    k: int
    per_subset: tuple[SubsetReport, ...]
    beta_min: float
    beta_geo: float
    rho_min: float
    mother_rho: float
    mother_density: float

    @property
    def beta_min_2k(self) -> float:
        """``beta_min ** (2/k)``: the squared-radius contraction."""
        return self.beta_min ** (2 / self.k)

    @property
    def density_geo(self) -> float:
        return geometric_mean([r.density for r in self.per_subset])


def all_subsets(n: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(1, n + 1), k))


def geometric_mean(values) -> float:
    v = np.asarray(values, dtype=float)
    if np.any(v <= 0):
        return 0.0
    return float(np.exp(np.mean(np.log(v))))


def check_subset(code: ErasureCode, S) -> tuple[int, ...]:
    try:
        s = tuple(int(i) for i in S)
    except (TypeError, ValueError):
        raise BadSubset(f"subset {S!r} is not a list of indices") from None
    if len(s) != code.k:
        raise BadSubset(f"subset {s} has size {len(s)}, expected {code.k}")
    if len(set(s)) != len(s) or any(i < 1 or i > code.n for i in s):
        raise BadSubset(f"subset {s} must hold distinct indices in 1..{code.n}")
    return tuple(sorted(s))


def child_generator(code: ErasureCode, S) -> np.ndarray:
    s = check_subset(code, S)
    return code.phi[[i - 1 for i in s], :] @ code.V


def child_lattice(code: ErasureCode, S) -> Lattice:
    """Lattice left after erasing every coordinate outside ``S``."""
    g = child_generator(code, S)
    try:
        return Lattice(g)
    except NumericallySingular as exc:
        raise ReducedRank(f"child lattice for S={tuple(S)} is singular: {exc}") from None


def _subset_report(code: ErasureCode, s, rho_v: float) -> SubsetReport:
    g = code.phi[[i - 1 for i in s], :] @ code.V
    G = g.T @ g
    det = float(np.linalg.det(G))
    if not det > RANK_TOLERANCE:
        return SubsetReport(s, G, det, 0.0, 0.0, 0.0)
    k = code.k
    sq = shortest_from_gram(G).squared_length
    rho = math.sqrt(sq) / 2
    beta = (rho / rho_v) ** k
    density = unit_ball_volume(k) * rho**k / math.sqrt(det)
    return SubsetReport(s, G, det, sq, beta, density)


@functools.lru_cache(maxsize=64)
def _mother_stats(mother: Lattice) -> tuple[float, float]:
    return packing_radius(mother), packing_density(mother)


def code_report(code: ErasureCode) -> CodeReport:
    """Per-subset metrics plus the worst-case and geometric-mean contraction.

    A singular child is kept in the report with ``beta = 0`` (that erasure
    pattern cannot be decoded) which also pins ``beta_min`` and ``beta_geo``
    to zero.
    """
    rho_v, mother_density = _mother_stats(code.mother)
    reports = tuple(_subset_report(code, s, rho_v) for s in code.subsets())
    betas = [r.beta for r in reports]
    return CodeReport(
        n=code.n,
        k=code.k,
        per_subset=reports,
        beta_min=min(betas),
        beta_geo=geometric_mean(betas),
        rho_min=min(math.sqrt(r.shortest_sq) / 2 for r in reports),
        mother_rho=rho_v,
        mother_density=mother_density,
    )


def beta_min(code: ErasureCode) -> float:
    return code_report(code).beta_min


def verify_cauchy_binet(code: ErasureCode) -> float:
    """Relative residual of ``sum_S det(child Gram) == det(mother Gram)``."""
    total = 0.0
    for s in code.subsets():
        g = child_generator(code, s)
        total += float(np.linalg.det(g.T @ g))
    det_v = float(np.linalg.det(code.V.T @ code.V))
    return abs(total - det_v) / det_v


def verify_phi_sum(code: ErasureCode) -> float:
    """Max entrywise residual of ``sum_S phi_S^T phi_S == C(n-1, k-1) I``."""
    n, k = code.n, code.k
    acc = np.zeros((k, k))
    for s in code.subsets():
        p = code.phi[[i - 1 for i in s], :]
        acc += p.T @ p
    return float(np.max(np.abs(acc - math.comb(n - 1, k - 1) * np.eye(k))))


# ---------------------------------------------------------------------------
# JSON code files


def code_to_dict(code: ErasureCode) -> dict:
    d = {
        "n": code.n,
        "k": code.k,
        "phi": [float(x) for x in code.phi.ravel()],
        "v": [float(x) for x in code.V.ravel()],
    }
    if code.name:
        d["name"] = code.name
    return d


def code_from_dict(d: dict) -> ErasureCode:
    """Build a code from its file representation.

    Files carry rounded decimals, so the frame only has to be orthonormal to
    1e-6; anything looser than 1e-9 is snapped back with a sign-fixed QR.
    """
    try:
        n, k = int(d["n"]), int(d["k"])
        phi = np.array(d["phi"], dtype=float)
        v = np.array(d["v"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidCode(f"malformed code file: {exc}") from None
    if not 1 <= k <= n:
        raise InvalidCode(f"need 1 <= k <= n, got n={n}, k={k}")
    if phi.size != n * k:
        raise InvalidCode(f"phi has {phi.size} entries, expected n*k = {n * k}")
    if v.size != k * k:
        raise InvalidCode(f"v has {v.size} entries, expected k*k = {k * k}")
    if not (np.all(np.isfinite(phi)) and np.all(np.isfinite(v))):
        raise InvalidCode("non-finite entries in phi or v")
    phi = phi.reshape(n, k)
    res = orthonormality_residual(phi)
    if res > FILE_ORTHO_TOL:
        raise InvalidCode(f"phi columns not orthonormal (max |phi^T phi - I| = {res:.3e})")
    if res > ORTHO_TOL:
        q, r = np.linalg.qr(phi)
        phi = q * np.sign(np.diag(r))
    try:
        mother = Lattice(v.reshape(k, k))
    except NumericallySingular as exc:
        raise InvalidCode(f"mother lattice is not full rank: {exc}") from None
    return ErasureCode(phi, mother, d.get("name"))


def save_code(code: ErasureCode, path) -> None:
    Path(path).write_text(json.dumps(code_to_dict(code), indent=2) + "\n", encoding="utf-8")


def load_code(path) -> ErasureCode:
    try:
        d = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidCode(f"{path}: not valid JSON ({exc})") from None
    return code_from_dict(d)
