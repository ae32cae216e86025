"""Search for a good (4,2) frame by random restarts and Givens hill climbing.

Random frames are far from optimal. Hill climbing closes most of the gap
to 1/3, the value the hand-built construction attains.
"""

import numpy as np

from lattice_erasure import ErasureCode, SearchConfig, code_report, mother_lattice, search
from lattice_erasure.rng import stream
from lattice_erasure.search import random_stiefel

z2 = mother_lattice("Z2")
rng = stream(0)
samples = [code_report(ErasureCode(random_stiefel(4, 2, rng), z2)).beta_min for _ in range(2000)]
print(f"2000 random frames: median beta_min {np.median(samples):.4f}, best {max(samples):.4f}")

res = search(SearchConfig(4, 2, z2, restarts=20, local_steps=200, seed=1))
print(f"hill climbing, 20 restarts: best beta_min {res.best_value:.4f} (restart {res.best_restart})")
print("best frame:")
print(np.array2string(res.best_code.phi, precision=4, suppress_small=True))
