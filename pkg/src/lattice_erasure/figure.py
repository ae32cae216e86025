"""Data behind the bound-versus-construction plot for (4,2) and (4,3) codes."""

from __future__ import annotations

import io

import numpy as np

from .bounds import cubic_density, determinant_bound, optimal_density, trace_bound
from .code import code_report
from .constructions import builtin

FIGURE_DIMS = ((4, 2), (4, 3))
FIGURE_CODES = ("4-2-z2", "4-3-cubic", "4-3-fcc", "4-3-bcc")
GRID_START = 0.3
GRID_POINTS = 41


def figure3_rows(grid_points: int = GRID_POINTS) -> list[tuple[str, int, int, float, float]]:
    """Rows ``(series, n, k, mother_density, beta^(2/k))``.

    Bound curves are sampled on a grid of mother densities up to the densest
    k-dimensional lattice; construction rows hold the measured value.
    """
    rows = []
    for n, k in FIGURE_DIMS:
        top = optimal_density(k)
        for dv in np.linspace(GRID_START, top, grid_points):
            dv = float(dv)
            for label, child in (("optimal", optimal_density(k)), ("cubic", cubic_density(k))):
                b = determinant_bound(dv, child, n, k) ** (2 / k)
                rows.append((f"det_bound_{label}", n, k, dv, b))
            rows.append(("trace_bound", n, k, dv, trace_bound(n, k)))
    for name in FIGURE_CODES:
        rep = code_report(builtin(name).code)
        rows.append((f"construction:{name}", rep.n, rep.k, rep.mother_density, rep.beta_min_2k))
    return rows


def figure3_csv(grid_points: int = GRID_POINTS) -> str:
    buf = io.StringIO()
    buf.write("series,n,k,mother_density,beta_2k\n")
    for series, n, k, dv, b in figure3_rows(grid_points):
        buf.write(f"{series},{n},{k},{dv!r},{b!r}\n")
    return buf.getvalue()
