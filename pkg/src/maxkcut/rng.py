"""Deterministic random streams for all randomized operations.

Every source of randomness in the package is a counter-based Philox generator
keyed by ``(seed, purpose, block)`` through numpy's ``SeedSequence``.  Purposes
separate unrelated uses (solver initialization, each rounding scheme, the
angle-difference sampler) so that, e.g., changing the number of rounding
trials never perturbs the solver.

Multi-trial drivers partition trials into fixed blocks of ``TRIAL_BLOCK``:
trial ``t`` lives in block ``t // TRIAL_BLOCK`` and owns row ``t % TRIAL_BLOCK``
of that block's draws.  Each block always materializes draws for the full
block regardless of how many trials it actually contributes, which makes the
variates of any given trial independent of the total trial count.  Blocks can
therefore be generated in any order (or in parallel) and aggregated with
plain sums without changing results.

Gaussian variates come from numpy's ziggurat sampler; this choice is fixed
for the release so runs are bit-reproducible on a given platform and kernel
backend.
"""

from __future__ import annotations

import numpy as np

# Trials per RNG block in multi-trial drivers.
TRIAL_BLOCK = 1 << 16

_PURPOSES = {
    "sdp-init": 1,
    "uniform": 2,
    "frieze-jerrum": 3,
    "disc": 4,
    "simplex": 5,
    "gamma": 6,
    "sector": 7,
}


def stream(seed: int, purpose: str, block: int = 0) -> np.random.Generator:
    """Return the Philox generator for ``(seed, purpose, block)``."""
    try:
        code = _PURPOSES[purpose]
    except KeyError:
        raise ValueError(f"unknown RNG purpose {purpose!r}") from None
    if seed < 0:
        raise ValueError("seed must be a nonnegative integer")
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(code, int(block)))
    return np.random.Generator(np.random.Philox(ss))


def block_layout(trials: int):
    """Yield ``(block_index, rows_used)`` covering ``trials`` trials."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    full, rest = divmod(trials, TRIAL_BLOCK)
    for b in range(full):
        yield b, TRIAL_BLOCK
    if rest:
        yield full, rest
