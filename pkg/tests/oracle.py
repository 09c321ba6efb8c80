"""Independent brute-force reference implementations used by the tests.

Nothing here imports the library's algorithms; sets are plain frozensets and
ranks come straight from definitions.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Sequence

Rank = Callable[[frozenset], int]


def subsets(ground: Iterable[int]):
    g = sorted(ground)
    for k in range(len(g) + 1):
        for c in itertools.combinations(g, k):
            yield frozenset(c)


def uniform_rank(r: int) -> Rank:
    return lambda X: min(len(X), r)


def graphic_rank(vertices: int, edges: Sequence[tuple[int, int]]) -> Rank:
    def rank(X: frozenset) -> int:
        parent = list(range(vertices))

        def find(v):
            while parent[v] != v:
                v = parent[v]
            return v

        r = 0
        for e in X:
            a, b = find(edges[e][0]), find(edges[e][1])
            if a != b:
                parent[a] = b
                r += 1
        return r

    return rank


def matrix_rank(matrix: Sequence[Sequence[int]], p: int) -> Rank:
    cols = [[row[j] % p for row in matrix] for j in range(len(matrix[0]))] if matrix else []

    def rank(X: frozenset) -> int:
        rows = [list(cols[j]) for j in sorted(X)]
        r = 0
        width = len(matrix)
        for c in range(width):
            piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = pow(rows[r][c], p - 2, p)
            rows[r] = [v * inv % p for v in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
            r += 1
        return r

    return rank


def dual_rank(rank: Rank, ground: frozenset) -> Rank:
    full = rank(ground)
    return lambda X: len(X) + rank(ground - X) - full


def lam(rank: Rank, ground: frozenset, X: frozenset) -> int:
    return rank(X) + rank(ground - X) - rank(ground)


def k_connected(rank: Rank, ground: frozenset, k: int) -> bool:
    for X in subsets(ground):
        Y = ground - X
        for j in range(1, k):
            if len(X) >= j and len(Y) >= j and lam(rank, ground, X) < j:
                return False
    return True


def three_connected(rank: Rank, ground: frozenset) -> bool:
    return k_connected(rank, ground, 3)


def minor_rank(rank: Rank, C: frozenset) -> Rank:
    rc = rank(C)
    return lambda X: rank(X | C) - rc


def is_circuit(rank: Rank, X: frozenset) -> bool:
    return rank(X) == len(X) - 1 and all(rank(X - {e}) == len(X) - 1 for e in X)


def circuits(rank: Rank, ground: frozenset) -> set[frozenset]:
    return {X for X in subsets(ground) if X and is_circuit(rank, X)}


def same_on(r1: Rank, r2: Rank, ground: frozenset) -> bool:
    return all(r1(X) == r2(X) for X in subsets(ground))


def has_exact_minor(rank: Rank, ground: frozenset, n_rank: Rank, n_ground: frozenset) -> bool:
    rest = sorted(ground - n_ground)
    for k in range(len(rest) + 1):
        for C in itertools.combinations(rest, k):
            r = minor_rank(rank, frozenset(C))
            if same_on(r, n_rank, n_ground):
                return True
    return False


def tangles(rank: Rank, ground: frozenset, theta: int) -> list[frozenset]:
    """All tangles of order theta, by choosing one side of every low pair."""
    low = [X for X in subsets(ground) if lam(rank, ground, X) < theta]
    pairs = []
    for X in low:
        Y = ground - X
        if (Y, X) not in pairs and (X, Y) not in pairs:
            pairs.append((X, Y))
    out = []
    for choice in itertools.product((0, 1), repeat=len(pairs)):
        fam = [p[c] for p, c in zip(pairs, choice)]
        if any(ground - {e} in fam for e in ground):
            continue
        if any(A | B | C == ground for A, B, C in itertools.combinations_with_replacement(fam, 3)):
            continue
        out.append(frozenset(fam))
    return out
