from typing import Optional

import numpy as np

from symmul.settings import base_settings

__all__ = ['rng', 'random_indices', 'random_vectors']


def rng(seed: Optional[int] = None) -> np.random.Generator:
    return np.random.default_rng(base_settings.RANDOM_SEED if seed is None else seed)


def random_indices(q: int, size, seed: Optional[int] = None) -> np.ndarray:
    return rng(seed).integers(0, q, size=size, dtype=np.int64)


def random_vectors(q: int, count: int, length: int, seed: Optional[int] = None) -> np.ndarray:
    return random_indices(q, (count, length), seed=seed)
