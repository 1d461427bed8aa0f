from __future__ import annotations

import numpy as np
from numpy.random import PCG64, Generator, SeedSequence


def make_generator(seed: int | SeedSequence | None = None) -> Generator:
    """Return a PCG64 generator seeded from ``seed``.

    ``None`` draws fresh entropy from the operating system.
    """
    if isinstance(seed, SeedSequence):
        return Generator(PCG64(seed))
    return Generator(PCG64(SeedSequence(seed)))

def spawn_seeds(seed: int | SeedSequence, n: int) -> list[SeedSequence]:
    """Split ``seed`` into ``n`` independent child seed sequences."""
    if not isinstance(seed, SeedSequence):
        seed = SeedSequence(seed)
    return seed.spawn(n)

def spawn_generators(seed: int | SeedSequence, n: int) -> list[Generator]:
    """Return ``n`` independent generators derived from ``seed``.

    The i-th generator only depends on ``seed`` and ``i``, so work
    distributed over threads stays reproducible.
    """
    return [make_generator(child) for child in spawn_seeds(seed, n)]

def derive_seed(seed: int | SeedSequence, index: int) -> int:
    """Return a 63-bit integer seed for the ``index``-th child of ``seed``."""
    child = spawn_seeds(seed, index + 1)[index]
    return int(child.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))
