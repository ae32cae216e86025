"""The (4,2) code as a lattice packing problem.

Each erasure pattern turns a noise disc into an ellipse in the mother
lattice's own plane. At radius 2 rho_min the square lattice touches five
of the six ellipses and still has no point inside any of them.
"""

from pathlib import Path

from lattice_erasure import builtin
from lattice_erasure.starbody import admissible, contacts, critical_radius, ellipsoid, plot_data

code = builtin("4-2-z2").code
r = critical_radius(code)
print(f"critical radius 2 rho_min = {r:.6f}")
print(f"admissible at r:        {admissible(code, r)}")
print(f"admissible at 1.01 r:   {admissible(code, 1.01 * r)}")
for c in contacts(code, r):
    e = ellipsoid(code, c.subset, r)
    print(f"  ellipse {c.subset}: eccentricity {e.eccentricity():.4f}, contacts {list(c.contact_points)}")

out = Path("starbody_4_2.csv")
out.write_text(plot_data(code, r, 2.0).to_csv())
print(f"plot data written to {out}")
