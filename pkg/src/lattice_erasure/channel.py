"""Monte Carlo estimate of the per-erasure-pattern block error rate.

The codebook is a finite piece of the code lattice: coefficient vectors in
``{0..M-1}^k``, centred and scaled so the mean codeword energy is ``n P``.
A transmitted codeword loses every coordinate outside ``S``; the surviving
coordinates get i.i.d. Gaussian noise and are decoded by exhaustive
nearest-codeword search (exact maximum-likelihood for this finite codebook).

Noise is drawn with numpy's ``Generator.standard_normal`` (ziggurat method)
from Philox streams keyed by ``(seed, subset index, trial block)``, so a
given seed reproduces the same draws no matter how work is split up.
"""

from __future__ import annotations

import io
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .code import ErasureCode, check_subset
from .errors import BadParams, ReducedRank
from .lattice import RANK_TOLERANCE
from .rng import stream

BLOCK_TRIALS = 1 << 16
_DECODE_CHUNK = 4096


@dataclass(frozen=True, eq=False)
class Constellation:
    code: ErasureCode
    coeff_set: np.ndarray
    scale: float
    points: np.ndarray
    centroid: np.ndarray
    power: float

    @property
    def size(self) -> int:
        return len(self.points)

    def mean_power(self) -> float:
        return float(np.mean(np.sum(self.points**2, axis=1)))


@dataclass(frozen=True)
class SimResult:
    subset: tuple[int, ...]
    trials: int
    errors: int
    sigma: float
    seed: int

    @property
    def p_e(self) -> float:
        return self.errors / self.trials

    @property
    def ci95_halfwidth(self) -> float:
        p = self.p_e
        return 1.96 * math.sqrt(p * (1 - p) / self.trials)


@dataclass(frozen=True)
class SweepResult:
    results: tuple[SimResult, ...]

    @property
    def worst_p_e(self) -> float:
        return max(r.p_e for r in self.results)

    @property
    def worst(self) -> SimResult:
        return max(self.results, key=lambda r: r.p_e)


def build_constellation(code: ErasureCode, M: int, P: float) -> Constellation:
    if int(M) != M or M < 2:
        raise BadParams(f"M must be an integer >= 2, got {M!r}")
    if not P > 0:
        raise BadParams(f"power must be positive, got {P!r}")
    coeffs = np.array(list(itertools.product(range(int(M)), repeat=code.k)), dtype=np.int64)
    raw = coeffs @ (code.phi @ code.V).T
    mean = raw.mean(axis=0)
    centred = raw - mean
    energy = float(np.mean(np.sum(centred**2, axis=1)))
    scale = math.sqrt(code.n * P / energy)
    return Constellation(code, coeffs, scale, scale * centred, scale * mean, float(P))


def _projected(const: Constellation, s: tuple[int, ...]) -> np.ndarray:
    code = const.code
    g = code.phi[[i - 1 for i in s], :] @ code.V
    if not np.linalg.det(g.T @ g) > RANK_TOLERANCE:
        raise ReducedRank(f"erasure pattern {s} is not decodable: phi_S V is singular")
    return const.points[:, [i - 1 for i in s]]


def _decode(proj: np.ndarray, y: np.ndarray) -> np.ndarray:
    # argmin returns the first minimiser, i.e. the lexicographically
    # smallest coefficient vector on exact ties
    out = np.empty(len(y), dtype=np.int64)
    for a in range(0, len(y), _DECODE_CHUNK):
        blk = y[a:a + _DECODE_CHUNK]
        d = np.sum((blk[:, None, :] - proj[None, :, :]) ** 2, axis=2)
        out[a:a + _DECODE_CHUNK] = np.argmin(d, axis=1)
    return out


def _run(proj, n_points, subset_index, sigma, trials, seed) -> int:
    k = proj.shape[1]
    errors = 0
    for b, start in enumerate(range(0, trials, BLOCK_TRIALS)):
        m = min(BLOCK_TRIALS, trials - start)
        rng = stream(seed, subset_index, b)
        sent = rng.integers(n_points, size=m)
        noise = rng.standard_normal((m, k))
        y = proj[sent] + sigma * noise
        errors += int(np.count_nonzero(_decode(proj, y) != sent))
    return errors


def simulate(const: Constellation, S, sigma: float, trials: int, seed: int) -> SimResult:
    """Block error rate for erasure pattern ``S`` at noise level ``sigma``."""
    s = check_subset(const.code, S)
    if trials < 1:
        raise BadParams("trials must be >= 1")
    if sigma < 0:
        raise BadParams("sigma must be non-negative")
    proj = _projected(const, s)
    idx = const.code.subsets().index(s)
    errors = _run(proj, const.size, idx, sigma, int(trials), seed)
    return SimResult(s, int(trials), errors, float(sigma), int(seed))


def simulate_all(const: Constellation, sigma: float, trials: int, seed: int) -> SweepResult:
    return SweepResult(
        tuple(simulate(const, s, sigma, trials, seed) for s in const.code.subsets())
    )


def q_function(x: float) -> float:
    return 0.5 * math.erfc(x / math.sqrt(2))


def nearest_neighbor_estimate(const: Constellation, S, sigma: float) -> float:
    """High-SNR error estimate: mean neighbour count times Q(d_min / 2 sigma)."""
    s = check_subset(const.code, S)
    proj = _projected(const, s)
    d = np.sqrt(np.sum((proj[:, None, :] - proj[None, :, :]) ** 2, axis=2))
    np.fill_diagonal(d, np.inf)
    dmin = float(d.min())
    neighbours = float(np.mean(np.sum(d <= dmin * (1 + 1e-9), axis=1)))
    return neighbours * q_function(dmin / (2 * sigma))


def union_bound_ratio(const: Constellation, result: SimResult) -> float:
    """Simulated over estimated error rate (informational; boundary effects skew it)."""
    est = nearest_neighbor_estimate(const, result.subset, result.sigma)
    return result.p_e / est if est > 0 else math.inf


def results_to_csv(results) -> str:
    buf = io.StringIO()
    buf.write("subset,sigma,trials,errors,p_e,ci95\n")
    for r in results:
        label = "-".join(str(i) for i in r.subset)
        buf.write(f"{label},{r.sigma!r},{r.trials},{r.errors},{r.p_e!r},{r.ci95_halfwidth!r}\n")
    return buf.getvalue()
