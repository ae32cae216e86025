"""How the determinant bound moves with the mother lattice.

A denser mother lattice leaves less room for its projections, so the
determinant bound on beta# falls as the mother density grows. The trace
bound ignores densities altogether.
"""

import numpy as np

from lattice_erasure import cubic_density, determinant_bound, optimal_density, trace_bound
from lattice_erasure.figure import figure3_csv

n, k = 4, 2
print(f"(n, k) = ({n}, {k}); trace bound on beta_min^(2/k) = {trace_bound(n, k)}")
print("mother density   det bound (optimal children)   det bound (square children)")
for dv in np.linspace(0.3, optimal_density(k), 6):
    a = determinant_bound(dv, optimal_density(k), n, k)
    b = determinant_bound(dv, cubic_density(k), n, k)
    print(f"{dv:14.4f}   {a:28.4f}   {b:27.4f}")

# the full plot data, ready for any plotting tool
csv = figure3_csv(grid_points=5)
print()
print("\n".join(csv.splitlines()[:6]))
print("...")
print("\n".join(line for line in csv.splitlines() if line.startswith("construction")))
