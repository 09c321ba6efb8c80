"""JSON reading and writing of matroids and witnesses.

A matroid file is one of

    {"type": "uniform", "rank": r, "size": n}
    {"type": "graphic", "vertices": v, "edges": [[u, w], ...]}
    {"type": "linear", "field": 2 | 3, "matrix": [[...], ...]}
    {"type": "table", "size": n, "ranks": [r(0), r(1), ..., r(2**n - 1)]}
    {"type": "relax", "base": <matroid>, "set": [...]}
    {"type": "minor", "base": <matroid>, "contract": [...], "delete": [...]}
    {"type": "dual", "base": <matroid>}

Leaf types accept an optional "labels" array; without it the elements are
0, 1, ..., n - 1.  Composite types refer to the labels of their base.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

import numpy as np

from .core import Matroid, MinorSpec, from_table, graphic, linear, relax, uniform
from .decomposition import tree_from_json, tree_to_json
from .errors import MatroidError
from .tangle import Tangle, _validate_masks

PathLike = Union[str, Path]


def _get(d: dict, key: str, kind: type | tuple):
    if key not in d:
        raise MatroidError(f"matroid of type {d.get('type')!r} needs {key!r}")
    value = d[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise MatroidError(f"{key!r} has the wrong type")
    return value


def _int_list(value: Any, what: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise MatroidError(f"{what} must be a list of integers")
    return value


def from_dict(d: dict) -> Matroid:
    """Build a matroid from its JSON description."""
    if not isinstance(d, dict):
        raise MatroidError("a matroid description must be a JSON object")
    kind = d.get("type")
    labels = d.get("labels")
    if labels is not None:
        labels = _int_list(labels, "labels")
    if kind == "uniform":
        return uniform(_get(d, "rank", int), _get(d, "size", int), labels)
    if kind == "graphic":
        edges = _get(d, "edges", list)
        for e in edges:
            _int_list(e, "each edge")
        return graphic(_get(d, "vertices", int), edges, labels)
    if kind == "linear":
        matrix = _get(d, "matrix", list)
        for row in matrix:
            _int_list(row, "each matrix row")
        if len({len(row) for row in matrix}) > 1:
            raise MatroidError("matrix rows have different lengths")
        return linear(_get(d, "field", int), matrix, labels)
    if kind == "table":
        n = _get(d, "size", int)
        ranks = _int_list(_get(d, "ranks", list), "ranks")
        if n < 0 or len(ranks) != 1 << n:
            raise MatroidError("a rank table needs 2**size entries")
        ground = labels if labels is not None else list(range(n))
        if len(ground) != n:
            raise MatroidError(f"expected {n} labels, got {len(ground)}")
        M = from_table(ground, np.array(ranks, dtype=np.int16))
        if not is_rank_function(M):
            raise MatroidError("rank table violates the rank axioms")
        return M
    if kind == "relax":
        return relax(from_dict(_get(d, "base", dict)), _int_list(_get(d, "set", list), "set"))
    if kind == "minor":
        base = from_dict(_get(d, "base", dict))
        C = _int_list(d.get("contract", []), "contract")
        D = _int_list(d.get("delete", []), "delete")
        return base.minor(C, D)
    if kind == "dual":
        return from_dict(_get(d, "base", dict)).dual()
    raise MatroidError(f"unknown matroid type {kind!r}")


def is_rank_function(M: Matroid) -> bool:
    from .bits import index_table, popcount_table

    n = M.size
    t = M.table.astype(np.int64)
    pop = popcount_table(n)
    idx = index_table(n)
    if t[0] != 0 or (t < 0).any() or (t > pop).any():
        return False
    for i in range(n):
        up = t[idx | (1 << i)]
        if ((up < t) | (up > t + 1)).any():
            return False
    for X in range(1 << n):
        if ((t[X] + t) < (t[X & idx] + t[X | idx])).any():
            return False
    return True


def to_dict(M: Matroid) -> dict:
    """JSON description of ``M``; falls back to a rank table."""
    if M.source is not None:
        return M.source
    return from_table(M.ground, M.table).source


def loads(text: str) -> Matroid:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatroidError(f"malformed JSON: {exc}") from None
    return from_dict(data)


def load(path: PathLike) -> Matroid:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatroidError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def dumps(M: Matroid) -> str:
    return json.dumps(to_dict(M), sort_keys=True)


def dump(M: Matroid, path: PathLike) -> None:
    Path(path).write_text(dumps(M) + "\n")


# -- witnesses --------------------------------------------------------------

def minor_spec_from_dict(d: dict) -> MinorSpec:
    if not isinstance(d, dict):
        raise MatroidError("a minor witness must be a JSON object")
    return MinorSpec(
        frozenset(_int_list(d.get("contract", []), "contract")),
        frozenset(_int_list(d.get("delete", []), "delete")),
    )


def tangle_to_dict(T: Tangle) -> dict:
    return T.to_dict()


def tangle_from_dict(M: Matroid, d: dict) -> Tangle:
    """Reload a tangle of ``M``; the family is re-validated."""
    order = d.get("order")
    if not isinstance(order, int):
        raise MatroidError("a tangle needs an integer order")
    members = d.get("members")
    if not isinstance(members, list):
        raise MatroidError("a tangle needs a list of members")
    masks = frozenset(M.mask(_int_list(m, "each member")) for m in members)
    check = _validate_masks(M, masks, order)
    if not check.valid:
        raise MatroidError(f"not a tangle of order {order}: axiom {check.axiom} fails")
    return Tangle(M, order, masks)


def tree_to_dict(tree) -> list:
    return tree_to_json(tree)


def tree_from_dict(data):
    if not isinstance(data, list):
        raise MatroidError("a decomposition tree is a nested list")
    try:
        return tree_from_json(data)
    except (TypeError, ValueError):
        raise MatroidError("malformed decomposition tree") from None
