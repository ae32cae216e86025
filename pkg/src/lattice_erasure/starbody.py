"""Noise ellipsoids pulled back to mother-lattice coordinates.

A noise ball of radius ``r`` in the coordinates kept by subset ``S`` becomes,
in the coordinates of the mother lattice's ambient space, the ellipsoid
``{y : ||phi_S y||^2 <= r^2}``. The union over all subsets is a star body;
the mother lattice is admissible for it when no nonzero lattice point falls
strictly inside any of the ellipsoids.
"""

from __future__ import annotations

import io
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .code import ErasureCode, check_subset, code_report
from .errors import BadParams, UnsupportedRank

CONTACT_TOLERANCE = 1e-7
DEFAULT_SEARCH_BOX = 6
PLOT_POINTS = 256


@dataclass(frozen=True)
class NoiseEllipsoid:
    subset: tuple[int, ...]
    quad_form: np.ndarray
    radius: float

    def contains(self, y) -> bool:
        y = np.asarray(y, dtype=float)
        return float(y @ self.quad_form @ y) <= self.radius**2

    def eccentricity(self) -> float:
        """Eccentricity of the boundary ellipse; only defined for k = 2."""
        if self.quad_form.shape != (2, 2):
            raise UnsupportedRank("eccentricity is defined for planar ellipses only")
        p, q, s = self.quad_form[0, 0], self.quad_form[0, 1], self.quad_form[1, 1]
        # eigenvalue gap in closed form so an exact circle gives exactly 0
        gap = math.hypot(p - s, 2 * q)
        lam_max = (p + s + gap) / 2
        return math.sqrt(gap / lam_max)

    def boundary(self, points: int = PLOT_POINTS) -> np.ndarray:
        """``points`` samples of the boundary ``y^T Q y = r^2`` (k = 2)."""
        if self.quad_form.shape != (2, 2):
            raise UnsupportedRank("boundary sampling is defined for k = 2 only")
        lam, U = np.linalg.eigh(self.quad_form)
        t = 2 * np.pi * np.arange(points) / points
        circle = np.stack([np.cos(t), np.sin(t)])
        return (U @ ((self.radius / np.sqrt(lam))[:, None] * circle)).T


@dataclass(frozen=True)
class ContactReport:
    subset: tuple[int, ...]
    contact_points: tuple[tuple[int, ...], ...]

    @property
    def touched(self) -> bool:
        return bool(self.contact_points)


def ellipsoid(code: ErasureCode, S, r: float) -> NoiseEllipsoid:
    s = check_subset(code, S)
    if not r > 0:
        raise BadParams(f"radius must be positive, got {r}")
    p = code.phi[[i - 1 for i in s], :]
    # elementwise products, not BLAS: fused multiply-adds leave ~1e-17
    # off-diagonals where the form is exactly a multiple of the identity
    q = (p[:, :, None] * p[:, None, :]).sum(axis=0)
    return NoiseEllipsoid(s, q, float(r))


def union_contains(code: ErasureCode, r: float, y) -> bool:
    return any(ellipsoid(code, s, r).contains(y) for s in code.subsets())


def _box(k: int, search_box: int) -> np.ndarray:
    pts = np.array(list(itertools.product(range(-search_box, search_box + 1), repeat=k)))
    return pts[np.any(pts != 0, axis=1)]


def _child_norms(code: ErasureCode, U: np.ndarray):
    for s in code.subsets():
        g = code.phi[[i - 1 for i in s], :] @ code.V
        yield s, np.sqrt(np.sum((U @ g.T) ** 2, axis=1))


def admissible(code: ErasureCode, r: float, search_box: int = DEFAULT_SEARCH_BOX) -> bool:
    """True iff no nonzero lattice point in the box lies strictly inside the union."""
    U = _box(code.k, search_box)
    return all(not np.any(norms < r - 1e-9) for _, norms in _child_norms(code, U))


def contacts(
    code: ErasureCode, r: float, search_box: int = DEFAULT_SEARCH_BOX
) -> list[ContactReport]:
    """Lattice points on the boundary of each ellipsoid, one report per subset."""
    U = _box(code.k, search_box)
    out = []
    for s, norms in _child_norms(code, U):
        hit = U[np.abs(norms - r) < CONTACT_TOLERANCE]
        out.append(ContactReport(s, tuple(tuple(int(x) for x in u) for u in hit)))
    return out


def critical_radius(code: ErasureCode) -> float:
    """``2 * rho_min``: the largest radius at which the mother stays admissible."""
    return 2 * code_report(code).rho_min


@dataclass(frozen=True)
class PlotData:
    ellipses: tuple[tuple[tuple[int, ...], np.ndarray], ...]
    lattice_points: np.ndarray
    eccentricities: tuple[float, ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("# sections: ellipse,subset,x,y | lattice,x,y\n")
        for s, pts in self.ellipses:
            label = "-".join(str(i) for i in s)
            for x, y in pts:
                buf.write(f"ellipse,{label},{float(x)!r},{float(y)!r}\n")
        for x, y in self.lattice_points:
            buf.write(f"lattice,{float(x)!r},{float(y)!r}\n")
        return buf.getvalue()


def plot_data(code: ErasureCode, r: float, window: float) -> PlotData:
    """Boundary polylines of every ellipse plus nearby mother-lattice points.

    ``window`` bounds the square ``[-window, window]^2`` from which lattice
    points are listed; ``window = 0`` lists none.
    """
    if code.k != 2:
        raise UnsupportedRank(f"plot data needs k = 2, got k = {code.k}")
    ells = [ellipsoid(code, s, r) for s in code.subsets()]
    polys = tuple((e.subset, e.boundary()) for e in ells)
    if window > 0:
        # |u| <= ||V^-1||_2 * ||x||_2 <= ||V^-1||_2 * sqrt(2) * window
        bound = int(math.ceil(np.linalg.norm(np.linalg.inv(code.V), 2) * math.sqrt(2) * window))
        grid = np.array(list(itertools.product(range(-bound, bound + 1), repeat=2)))
        pts = grid @ code.V.T
        pts = pts[np.all(np.abs(pts) <= window + 1e-12, axis=1)]
    else:
        pts = np.zeros((0, 2))
    return PlotData(polys, pts, tuple(e.eccentricity() for e in ells))
