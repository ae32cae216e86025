"""Reproducible, splittable random streams.

Every stream is a Philox (counter-based) generator keyed by a root seed and
a tuple of integers naming the unit of work (restart index, subset index,
trial block, ...). Streams therefore do not depend on the order or the
process in which work units run.
"""

from __future__ import annotations

import numpy as np


def stream(seed: int, *key: int) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(x) for x in key))
    return np.random.Generator(np.random.Philox(ss))
