"""Rank computations over GF(2) and GF(3) for small column sets."""

from __future__ import annotations

from typing import Sequence

import numpy as np

FIELDS = (2, 3)


def _inverse(a: int, p: int) -> int:
    # fields of size 2 and 3 are self-inverse on nonzero elements
    return a % p


def _reduce(vec: list[int], basis: list[tuple[int, list[int]]], p: int) -> list[int]:
    v = list(vec)
    for piv, b in basis:
        c = v[piv]
        if c:
            v = [(x - c * y) % p for x, y in zip(v, b)]
    return v


def _normalise(v: list[int], p: int) -> tuple[int, list[int]]:
    piv = next(i for i, x in enumerate(v) if x)
    inv = _inverse(v[piv], p)
    return piv, [(x * inv) % p for x in v]


def column_rank(columns: Sequence[Sequence[int]], p: int) -> int:
    """Rank over GF(p) of the given column vectors."""
    basis: list[tuple[int, list[int]]] = []
    for col in columns:
        v = _reduce([x % p for x in col], basis, p)
        if any(v):
            basis.append(_normalise(v, p))
    return len(basis)


def matrix_columns(matrix: Sequence[Sequence[int]], p: int) -> list[tuple[int, ...]]:
    if p not in FIELDS:
        raise ValueError(f"unsupported field GF({p}); only GF(2) and GF(3)")
    rows = [list(r) for r in matrix]
    if not rows:
        return []
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    return [tuple(int(rows[i][j]) % p for i in range(len(rows))) for j in range(width)]


def _gf2_table(columns: Sequence[Sequence[int]]) -> np.ndarray:
    n = len(columns)
    ints = [sum(1 << i for i, x in enumerate(col) if x) for col in columns]
    table = np.zeros(1 << n, dtype=np.int16)

    # depth-first over masks, adding elements in increasing index order and
    # carrying an xor basis keyed by leading bit
    stack = [(0, 0, {})]
    while stack:
        mask, start, basis = stack.pop()
        r = table[mask]
        for j in range(start, n):
            v = ints[j]
            while v:
                top = v.bit_length() - 1
                if top in basis:
                    v ^= basis[top]
                else:
                    break
            new = mask | (1 << j)
            if v:
                table[new] = r + 1
                nb = dict(basis)
                nb[v.bit_length() - 1] = v
            else:
                table[new] = r
                nb = basis
            stack.append((new, j + 1, nb))
    return table


def rank_table(columns: Sequence[Sequence[int]], p: int) -> np.ndarray:
    """Rank of every column subset, indexed by bitmask."""
    if p == 2:
        return _gf2_table(columns)
    n = len(columns)
    table = np.zeros(1 << n, dtype=np.int16)
    stack: list[tuple[int, int, list]] = [(0, 0, [])]
    while stack:
        mask, start, basis = stack.pop()
        r = table[mask]
        for j in range(start, n):
            v = _reduce(list(columns[j]), basis, p)
            new = mask | (1 << j)
            if any(v):
                table[new] = r + 1
                nb = basis + [_normalise(v, p)]
            else:
                table[new] = r
                nb = basis
            stack.append((new, j + 1, nb))
    return table
