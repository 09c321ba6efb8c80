"""Bitmask helpers shared by the exhaustive routines.

Subsets of a ground set of size ``n`` are encoded as integers whose bit ``i``
stands for the ``i``-th element in ground order.  Tables indexed by masks are
plain numpy arrays of length ``2**n``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

TABLE_CAP = 20


def bits_of(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowbit_index(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@lru_cache(maxsize=None)
def popcount_table(n: int) -> np.ndarray:
    pop = np.zeros(1 << n, dtype=np.int16)
    for b in range(n):
        pop[1 << b : 1 << (b + 1)] = pop[: 1 << b] + 1
    pop.setflags(write=False)
    return pop


@lru_cache(maxsize=None)
def index_table(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    idx.setflags(write=False)
    return idx


def deposit_table(positions: Sequence[int]) -> np.ndarray:
    """Map every local mask over ``len(positions)`` bits to the mask over the
    original positions (a vectorised pdep)."""
    arr = np.zeros(1, dtype=np.int64)
    for p in positions:
        arr = np.concatenate([arr, arr | (1 << p)])
    return arr


def deposit(mask: int, positions: Sequence[int]) -> int:
    out = 0
    for i, p in enumerate(positions):
        if mask >> i & 1:
            out |= 1 << p
    return out


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def superset_min(values: np.ndarray, n: int) -> np.ndarray:
    """``out[X] = min(values[Y] for Y ⊇ X)``."""
    out = values.copy()
    for b in range(n):
        view = out.reshape(-1, 2, 1 << b)
        np.minimum(view[:, 0, :], view[:, 1, :], out=view[:, 0, :])
    return out


def subset_any(flags: np.ndarray, n: int) -> np.ndarray:
    """``out[X] = any(flags[Y] for Y ⊇ X)``: X lies below some flagged set."""
    out = flags.copy()
    for b in range(n):
        view = out.reshape(-1, 2, 1 << b)
        np.logical_or(view[:, 0, :], view[:, 1, :], out=view[:, 0, :])
    return out


def lex_key(mask: int) -> tuple[int, ...]:
    """Sort key placing subsets in lexicographic order of their sorted
    element tuples."""
    return tuple(bits_of(mask))
