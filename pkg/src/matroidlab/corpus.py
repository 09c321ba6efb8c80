"""Deterministic test corpus of small matroids.

Random matrices come from the 32-bit linear congruential generator
``x -> (1664525 * x + 1013904223) mod 2**32`` started at the seed; each
matrix entry is ``(x >> 16) % p`` for the next state ``x``, filled row by
row.  For each field p in (2, 3), each size n from 4 to ``max_n`` and each
rank r from 2 to n - 2, one r x n matrix is drawn, in that loop order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .bits import index_table, popcount_table
from .core import Matroid, from_table, graphic, linear, uniform, wheel, whirl
from .errors import MatroidError

CORPUS_CAP = 12

LCG_A = 1664525
LCG_C = 1013904223
LCG_M = 1 << 32


class LCG:
    def __init__(self, seed: int):
        self.state = seed % LCG_M

    def next(self) -> int:
        self.state = (LCG_A * self.state + LCG_C) % LCG_M
        return self.state

    def entry(self, p: int) -> int:
        return (self.next() >> 16) % p


def _complete(v: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(v) for b in range(a + 1, v)]


def fan_graph_edges(m: int) -> list[tuple[int, int]]:
    """Apex 0 over the path 1..m, listed in fan order (spoke, path edge, ...)."""
    edges = []
    for i in range(1, m + 1):
        edges.append((0, i))
        if i < m:
            edges.append((i, i + 1))
    return edges


def named_graphs() -> list[tuple[str, int, list[tuple[int, int]]]]:
    k5 = _complete(5)
    return [
        ("M(K4)", 4, _complete(4)),
        ("M(bowtie)", 5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]),
        ("M(fan3)", 4, fan_graph_edges(3)),
        ("M(fan4)", 5, fan_graph_edges(4)),
        ("M(fan5)", 6, fan_graph_edges(5)),
        ("M(K5\\e)", 5, k5[1:]),
        ("M(prism)", 6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]),
        ("M(K3,3)", 6, [(a, b) for a in range(3) for b in range(3, 6)]),
        ("M(K5)", 5, k5),
    ]


@dataclass(frozen=True)
class Entry:
    name: str
    matroid: Matroid


def _base(seed: int, max_n: int) -> Iterator[tuple[str, Matroid]]:
    for n in range(1, max_n + 1):
        for r in range(n + 1):
            yield f"U({r},{n})", uniform(r, n)
    for r in range(2, max_n // 2 + 1):
        yield f"M(W_{r})", wheel(r)
        yield f"W^{r}", whirl(r)
    for name, v, edges in named_graphs():
        if len(edges) <= max_n:
            yield name, graphic(v, edges)
    rng = LCG(seed)
    for p in (2, 3):
        for n in range(4, max_n + 1):
            for r in range(2, n - 1):
                rows = [[rng.entry(p) for _ in range(n)] for _ in range(r)]
                yield f"GF({p})[{r}x{n}]", linear(p, rows)


def corpus(seed: int = 1, max_n: int = 8) -> list[Entry]:
    """Base matroids and their duals, deduplicated by rank function.

    The first name seen for a rank function is kept, so U(2,4) appears once
    even though it is also a whirl and its own dual.
    """
    if max_n > CORPUS_CAP:
        raise MatroidError(f"corpus limited to {CORPUS_CAP} elements")
    seen: set = set()
    out: list[Entry] = []

    def add(name: str, M: Matroid) -> None:
        key = (M.ground, M.table.tobytes())
        if key in seen:
            return
        seen.add(key)
        M.name = name
        out.append(Entry(name, M))

    base = list(_base(seed, max_n))
    for name, M in base:
        add(name, M)
    for name, M in base:
        add(f"dual {name}", M.dual())
    return out


def matroids(seed: int = 1, max_n: int = 8) -> list[Matroid]:
    return [e.matroid for e in corpus(seed, max_n)]


def truncated_lines(n: int, lines: list[tuple[int, ...]], r: int) -> Matroid:
    """Truncation to rank r of disjoint lines (each a U(2, |L|)) plus free elements.

    Rank is min(r, |X| - sum over lines L of max(0, |X & L| - 2)).
    """
    pop = popcount_table(n).astype(np.int64)
    idx = index_table(n)
    r0 = pop.copy()
    for L in lines:
        m = sum(1 << x for x in L)
        r0 -= np.maximum(pop[idx & m] - 2, 0)
    return from_table(range(n), np.minimum(r0, r))


def line_configurations() -> list[Entry]:
    """Matroids of branch width 4 whose tangle matroids have skew long lines.

    Random corpus members up to 12 elements have no such pair, so checks
    that need one draw on these as well.
    """
    out = []
    for n, lines, r in [
        (12, [(0, 1, 2), (3, 4, 5)], 4),
        (12, [(0, 1, 2), (3, 4, 5)], 5),
        (12, [(0, 1, 2), (3, 4, 5)], 6),
    ]:
        M = truncated_lines(n, lines, r)
        M.name = "T{}(".format(r) + "+".join("U(2,{})".format(len(L)) for L in lines) + f"+free,{n})"
        out.append(Entry(M.name, M))
    return out
