"""
Reproducible randomness.

Every randomized routine takes a numpy Generator backed by the counter-based
Philox bit generator. Trial generators are derived from (seed, trial index) so
any single trial can be replayed from a report.
"""

import secrets
from typing import Optional

import numpy as np

from .config import settings


def resolve_seed(seed: Optional[int] = None) -> int:
    """Flag beats MONOMIAL_SEED, which beats fresh entropy"""
    if seed is not None:
        return int(seed) & 0xFFFFFFFFFFFFFFFF
    if settings.MONOMIAL_SEED is not None:
        return int(settings.MONOMIAL_SEED) & 0xFFFFFFFFFFFFFFFF
    return secrets.randbits(64)


def trial_seed(seed: int, trial: int) -> int:
    """64-bit seed of one trial"""
    state = np.random.SeedSequence([seed & 0xFFFFFFFFFFFFFFFF, trial]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed & 0xFFFFFFFFFFFFFFFF))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return make_rng(trial_seed(seed, trial))
