"""Exact branch decompositions by dynamic programming over subsets.

A decomposition is a cubic tree whose leaves are the elements; its width is
the largest connectivity lambda of a set displayed by a tree edge.  Widths
are reported as max-lambda (not lambda + 1), the normalisation under which
the minimum width equals the largest tangle order.

Trees are written as nested pairs of labels.  ``(a, (b, c))`` is the cubic
tree obtained from that rooted binary tree by suppressing the root.
"""

from __future__ import annotations

from typing import Union

from .bits import lowbit_index, popcount
from .connectivity import lambda_table
from .core import Matroid
from .errors import GroundSetTooLarge, MatroidError

DECOMPOSITION_CAP = 12

Tree = Union[int, tuple]


def branch_width_by_decomposition(M: Matroid) -> tuple[int, Tree]:
    """Minimum width over all branch decompositions, with a witness tree."""
    n = M.size
    if n > DECOMPOSITION_CAP:
        raise GroundSetTooLarge(f"decomposition search limited to {DECOMPOSITION_CAP} elements")
    if n == 0:
        return 0, ()
    if n == 1:
        return 0, M.ground[0]
    lam = lambda_table(M)
    rest = M.full_mask & ~1
    width: dict[int, int] = {}
    split: dict[int, int] = {}
    masks = sorted((m for m in _submasks_nonempty(rest)), key=popcount)
    for X in masks:
        if popcount(X) == 1:
            width[X] = int(lam[X])
            continue
        low = X & -X
        others = X ^ low
        best = None
        best_a = 0
        # A ranges over proper subsets of X containing its lowest element
        sub = others
        while True:
            A = low | sub
            if A != X:
                w = max(width[A], width[X ^ A])
                if best is None or w < best or (w == best and A < best_a):
                    best, best_a = w, A
            if sub == 0:
                break
            sub = (sub - 1) & others
        width[X] = max(int(lam[X]), best)
        split[X] = best_a
    total = width[rest]

    def build(X: int) -> Tree:
        if popcount(X) == 1:
            return M.ground[lowbit_index(X)]
        A = split[X]
        return (build(A), build(X ^ A))

    return total, (M.ground[0], build(rest))


def _submasks_nonempty(mask: int):
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def _leaves(tree: Tree) -> list[int]:
    if isinstance(tree, (tuple, list)):
        out = []
        for child in tree:
            out.extend(_leaves(child))
        return out
    return [tree]


def decomposition_width(M: Matroid, tree: Tree) -> int:
    """Width of a decomposition given as nested pairs; validates its shape."""
    if M.size == 0:
        return 0
    leaves = _leaves(tree)
    if sorted(leaves) != list(M.ground):
        raise MatroidError("tree leaves must be exactly the ground set, each once")
    if M.size == 1:
        return 0
    if not isinstance(tree, (tuple, list)) or len(tree) != 2:
        raise MatroidError("decomposition must be a pair at the top")
    lam = lambda_table(M)
    widths = []

    def walk(node: Tree) -> int:
        if isinstance(node, (tuple, list)):
            if len(node) != 2:
                raise MatroidError("internal nodes must have exactly two children")
            m = walk(node[0]) | walk(node[1])
        else:
            m = 1 << M.position(node)
        widths.append(int(lam[m]))
        return m

    walk(tree[0])
    walk(tree[1])
    return max(widths)


def tree_to_json(tree: Tree):
    if isinstance(tree, (tuple, list)):
        return [tree_to_json(t) for t in tree]
    return tree


def tree_from_json(data) -> Tree:
    if isinstance(data, list):
        return tuple(tree_from_json(t) for t in data)
    return int(data)
