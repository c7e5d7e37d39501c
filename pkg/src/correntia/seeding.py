"""Deterministic random-number plumbing.

Every stochastic operation in this package draws from a PCG64 generator
constructed here, so any result is a pure function of (inputs, seed).
Sub-seeds for nested stages (splits, folds, noise draws) are derived with
:func:`child_seed`, which hashes the parent seed together with integer
tags through ``numpy.random.SeedSequence``; the derivation is stable
across runs and platforms.
"""

import numpy as np

__all__ = ["make_rng", "child_seed"]


def make_rng(seed: int) -> np.random.Generator:
    """Return the package-wide deterministic generator (PCG64) for ``seed``."""
    if seed < 0:
        raise ValueError(f"seed must be a nonnegative integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def child_seed(seed: int, *tags: int) -> int:
    """Derive a sub-seed from ``seed`` and a tuple of integer tags.

    Distinct tag tuples give independent streams; the same tuple always
    gives the same sub-seed.
    """
    if seed < 0:
        raise ValueError(f"seed must be a nonnegative integer, got {seed}")
    state = np.random.SeedSequence([int(seed), *[int(t) for t in tags]]).generate_state(2)
    return int(state[0]) << 32 | int(state[1])
