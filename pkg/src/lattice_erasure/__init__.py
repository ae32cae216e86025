"""Low-rank lattice erasure codes with noise margins.

A rank-k lattice is embedded in R^n by an orthonormal frame so that any k
surviving coordinates still determine the lattice point. This package
evaluates such codes erasure pattern by erasure pattern, bounds what any
code can achieve, searches for good frames and simulates the noisy erasure
channel.
"""

from .bounds import (
    BoundsReport,
    bounds_report,
    cubic_density,
    determinant_bound,
    optimal_density,
    trace_bound,
)
from .channel import (
    Constellation,
    SimResult,
    build_constellation,
    simulate,
    simulate_all,
)
from .code import (
    CodeReport,
    ErasureCode,
    SubsetReport,
    child_lattice,
    code_report,
    load_code,
    save_code,
    verify_cauchy_binet,
    verify_phi_sum,
)
from .constructions import NAMES, NamedConstruction, builtin, mother_lattice, verify_all
from .errors import LatticeCodeError
from .lattice import (
    Lattice,
    ShortestVectorResult,
    closest_vector,
    determinant,
    gram,
    packing_density,
    packing_radius,
    shortest_vector,
    unit_ball_volume,
)
from .search import Objective, SearchConfig, SearchResult, random_stiefel, search
from .starbody import admissible, contacts, ellipsoid, plot_data

__version__ = "0.1.0"
