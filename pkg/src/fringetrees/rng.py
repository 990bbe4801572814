"""Counter-based random streams keyed by (seed, *path).

Every replicate of every experiment gets its own Philox stream derived from
the root seed and a tuple of non-negative integers, so results never depend
on which worker drew them or in which order.
"""

from __future__ import annotations

import numpy as np


def make_rng(seed: int, *key: int) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def as_rng(rng: np.random.Generator | int | None) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return make_rng(0 if rng is None else rng)
