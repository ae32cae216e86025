"""Random-restart hill climbing over orthonormal frames.

Each restart draws a Haar-random frame and then repeatedly proposes a
left Givens rotation ``Q @ phi``. Rotations keep the columns exactly
orthonormal (up to rounding) so no re-projection onto the Stiefel manifold
is needed. A proposal is kept only if it strictly improves the objective;
after ``patience`` consecutive rejections the rotation angle is halved.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .code import ErasureCode, code_report
from .errors import BadParams
from .lattice import Lattice
from .rng import stream


class Objective(str, enum.Enum):
    BETA_MIN = "beta_min"
    BETA_GEO = "beta_geo"


@dataclass(frozen=True)
class SearchConfig:
    n: int
    k: int
    mother: Lattice
    objective: Objective = Objective.BETA_MIN
    restarts: int = 10
    local_steps: int = 200
    step_scale: float = 0.5
    seed: int = 0
    patience: int = 20
    keep_trace: bool = False

    def __post_init__(self):
        object.__setattr__(self, "objective", Objective(self.objective))
        if not 1 <= self.k <= self.n:
            raise BadParams(f"need 1 <= k <= n, got n={self.n}, k={self.k}")
        if self.mother.generator.shape != (self.k, self.k):
            raise BadParams("mother generator must be k x k")
        if self.restarts < 1:
            raise BadParams("restarts must be >= 1")
        if self.local_steps < 0:
            raise BadParams("local_steps must be >= 0")
        if not 0 < self.step_scale < math.pi / 2:
            raise BadParams("step_scale must lie in (0, pi/2)")
        if self.patience < 1:
            raise BadParams("patience must be >= 1")


@dataclass(frozen=True)
class SearchResult:
    best_code: ErasureCode
    best_value: float
    objective: Objective
    evaluations: int
    best_restart: int
    restart_values: tuple[float, ...]
    trace: tuple[tuple[int, float], ...] | None = None


def random_stiefel(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed ``n x k`` frame: QR of a Gaussian matrix, with R_ii > 0."""
    if not 1 <= k <= n:
        raise BadParams(f"need 1 <= k <= n, got n={n}, k={k}")
    q, r = np.linalg.qr(rng.standard_normal((n, k)))
    return q * np.sign(np.diag(r))


def evaluate(code: ErasureCode, objective: Objective | str) -> float:
    rep = code_report(code)
    if Objective(objective) is Objective.BETA_MIN:
        return rep.beta_min
    return rep.beta_geo


def givens(phi: np.ndarray, i: int, j: int, theta: float) -> np.ndarray:
    """Rotate rows ``i`` and ``j`` of ``phi`` by ``theta``."""
    c, s = math.cos(theta), math.sin(theta)
    out = phi.copy()
    out[i] = c * phi[i] - s * phi[j]
    out[j] = s * phi[i] + c * phi[j]
    return out


def _climb(cfg: SearchConfig, restart: int):
    rng = stream(cfg.seed, restart)
    code = ErasureCode(random_stiefel(cfg.n, cfg.k, rng), cfg.mother)
    value = evaluate(code, cfg.objective)
    trace = [value]
    theta = cfg.step_scale
    rejected = 0
    n = cfg.n
    for _ in range(cfg.local_steps):
        i, j = rng.choice(n, size=2, replace=False) if n > 1 else (0, 0)
        angle = rng.uniform(-theta, theta)
        if n > 1:
            cand = code.with_phi(givens(code.phi, int(i), int(j), angle))
            cand_value = evaluate(cand, cfg.objective)
        else:
            cand_value = -math.inf
        if cand_value > value:
            code, value = cand, cand_value
            rejected = 0
        else:
            rejected += 1
            if rejected >= cfg.patience:
                theta /= 2
                rejected = 0
        trace.append(value)
    return code.phi, value, trace


def search(cfg: SearchConfig, workers: int = 1) -> SearchResult:
    """Best frame over ``cfg.restarts`` independent hill climbs.

    The outcome depends only on ``cfg``; ``workers`` just spreads restarts
    over processes.
    """
    idx = range(cfg.restarts)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(_climb, [cfg] * cfg.restarts, idx))
    else:
        runs = [_climb(cfg, r) for r in idx]

    values = [v for _, v, _ in runs]
    best = int(np.argmax(values))
    trace = None
    if cfg.keep_trace:
        flat = []
        it = 0
        for _, _, tr in runs:
            for v in tr:
                flat.append((it, v))
                it += 1
        trace = tuple(flat)
    phi = runs[best][0]
    return SearchResult(
        best_code=ErasureCode(phi, cfg.mother),
        best_value=values[best],
        objective=cfg.objective,
        evaluations=cfg.restarts * (cfg.local_steps + 1),
        best_restart=best,
        restart_values=tuple(values),
        trace=trace,
    )
