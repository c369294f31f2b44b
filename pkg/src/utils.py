# src/utils.py

from collections.abc import Iterator, Sequence
from itertools import combinations

import numpy as np

from src.config import RNG_SEED


def make_rng(seed: int | None = None) -> np.random.Generator:
    """Seeded generator; every random draw in the package goes through one of these."""
    return np.random.default_rng(RNG_SEED if seed is None else seed)


# ---------------------------------------------------------
# Bit-vector helpers
# ---------------------------------------------------------
def mask_of(indices) -> int:
    mask = 0
    for idx in indices:
        mask |= 1 << idx
    return mask


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def submasks(mask: int) -> Iterator[int]:
    """Every submask of `mask`, including 0 and `mask` itself (no particular order)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def canonical_subsets(
    mask: int,
    order: Sequence[int],
    min_size: int = 0,
    max_size: int | None = None,
) -> Iterator[int]:
    """
    Submasks of `mask` by ascending cardinality, then lexicographically.

    `order` lists bit indices in their lexicographic rank (for contracts: sorted
    by id); only the indices present in `mask` are used.
    """
    members = [idx for idx in order if mask >> idx & 1]
    top = len(members) if max_size is None else min(max_size, len(members))
    for size in range(min_size, top + 1):
        for combo in combinations(members, size):
            yield mask_of(combo)
