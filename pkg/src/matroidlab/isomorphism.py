"""Brute-force matroid isomorphism by backtracking with element invariants.

Only intended for ground sets of at most twelve elements.
"""

from __future__ import annotations

import itertools
from typing import Optional

import numpy as np

from .bits import popcount_table
from .core import Matroid, circuit_masks
from .errors import GroundSetTooLarge

ISO_CAP = 12


def _element_signature(M: Matroid) -> list[tuple]:
    n = M.size
    sig = [[0] * (2 * n + 2) for _ in range(n)]
    for m in circuit_masks(M):
        k = bin(m).count("1")
        for i in range(n):
            if m >> i & 1:
                sig[i][k] += 1
    for m in circuit_masks(M.dual()):
        k = bin(m).count("1")
        for i in range(n):
            if m >> i & 1:
                sig[i][n + 1 + k] += 1
    return [tuple(s) for s in sig]


def _profile(M: Matroid) -> tuple:
    t = M.table
    pop = popcount_table(M.size)
    counts = np.zeros((M.size + 1, M.size + 1), dtype=np.int64)
    np.add.at(counts, (pop, t), 1)
    return (M.size, M.full_rank, counts.tobytes())


def find_isomorphism(M1: Matroid, M2: Matroid) -> Optional[dict[int, int]]:
    """A label bijection phi with r2(phi(X)) = r1(X) for all X, or None."""
    n = M1.size
    if n != M2.size:
        return None
    if n > ISO_CAP:
        raise GroundSetTooLarge(f"isomorphism search limited to {ISO_CAP} elements")
    if _profile(M1) != _profile(M2):
        return None
    s1 = _element_signature(M1)
    s2 = _element_signature(M2)
    if sorted(s1) != sorted(s2):
        return None
    t1, t2 = M1.table, M2.table

    # assign rarest signature classes first
    freq = {s: s1.count(s) for s in s1}
    order = sorted(range(n), key=lambda i: (freq[s1[i]], i))
    candidates = [[j for j in range(n) if s2[j] == s1[i]] for i in order]

    used = [False] * n
    image = [0] * n

    def extend(depth: int, src: np.ndarray, dst: np.ndarray) -> bool:
        if depth == n:
            return True
        i = order[depth]
        for j in candidates[depth]:
            if used[j]:
                continue
            new_src = src | (1 << i)
            new_dst = dst | (1 << j)
            if not np.array_equal(t1[new_src], t2[new_dst]):
                continue
            used[j] = True
            image[i] = j
            if extend(depth + 1, np.concatenate([src, new_src]), np.concatenate([dst, new_dst])):
                return True
            used[j] = False
        return False

    start = np.zeros(1, dtype=np.int64)
    if not extend(0, start, start):
        return None
    return {M1.ground[i]: M2.ground[image[i]] for i in range(n)}


def is_isomorphic(M1: Matroid, M2: Matroid) -> bool:
    return find_isomorphism(M1, M2) is not None


def has_isomorphic_minor(M: Matroid, N: Matroid) -> bool:
    """Whether some minor of M is isomorphic to N (labels ignored)."""
    n, k = M.size, N.size
    if k > n:
        return False
    if M.size > ISO_CAP:
        raise GroundSetTooLarge(f"isomorphic minor search limited to {ISO_CAP} elements")
    ncontract = M.full_rank - N.full_rank
    nremove = n - k
    if ncontract < 0 or ncontract > nremove:
        return False
    seen = set()
    for removed in itertools.combinations(range(n), nremove):
        for cpart in itertools.combinations(removed, ncontract):
            cmask = sum(1 << i for i in cpart)
            if M.rank_mask(cmask) != ncontract:
                continue
            dmask = sum(1 << i for i in removed) & ~cmask
            minor = M.minor(M.labels_of(cmask), M.labels_of(dmask))
            if minor.full_rank != N.full_rank:
                continue
            key = minor.table.tobytes()
            if key in seen:
                continue
            seen.add(key)
            if is_isomorphic(minor, N):
                return True
    return False

