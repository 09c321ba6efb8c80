"""Matroids as exact rank oracles over small labelled ground sets.

A :class:`Matroid` wraps a rank function on bitmasks over its ground set.
Ground labels are distinct non-negative integers kept in increasing order;
minors keep the labels of the elements they retain, so a minor ``N`` of
``M`` lives on a subset of ``M``'s labels and can be compared against other
minors of ``M`` directly.

Whenever the ground set has at most :data:`~matroidlab.bits.TABLE_CAP`
elements the full rank table is materialised lazily (one ``int16`` per
subset); larger matroids (up to the global cap) answer rank queries through
a memoised oracle.
"""

from __future__ import annotations

import itertools
import os
import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import linalg
from .bits import (
    TABLE_CAP,
    bits_of,
    deposit,
    deposit_table,
    index_table,
    lex_key,
    popcount,
    popcount_table,
)
from .errors import GroundSetTooLarge, LemmaViolation, MatroidError

HARD_CAP = 24


def max_ground_size() -> int:
    """Global cap on ground-set size, lowered by ``MATROIDLAB_MAX_N``."""
    env = os.environ.get("MATROIDLAB_MAX_N")
    if env:
        try:
            return max(0, min(HARD_CAP, int(env)))
        except ValueError:
            raise MatroidError(f"MATROIDLAB_MAX_N must be an integer, got {env!r}")
    return HARD_CAP


GroundSubset = frozenset


class Matroid:
    """Immutable matroid given by a rank oracle on local bitmasks.

    ``oracle`` maps a mask over ``range(len(ground))`` to a rank.  ``table``
    may be supplied directly or produced later by ``table_builder``.
    ``source`` is the JSON description the matroid was built from; it is
    what :func:`matroidlab.io.to_json` writes.
    """

    __slots__ = (
        "_ground",
        "_pos",
        "_oracle",
        "_table",
        "_builder",
        "_memo",
        "_lock",
        "_rank",
        "source",
        "name",
    )

    def __init__(
        self,
        ground: Sequence[int],
        oracle: Callable[[int], int],
        *,
        table: Optional[np.ndarray] = None,
        table_builder: Optional[Callable[[], np.ndarray]] = None,
        source: Optional[dict] = None,
        name: Optional[str] = None,
    ):
        ground = tuple(int(g) for g in ground)
        if any(g < 0 for g in ground):
            raise MatroidError("element labels must be non-negative integers")
        if any(a >= b for a, b in zip(ground, ground[1:])):
            raise MatroidError("element labels must be distinct and increasing")
        cap = max_ground_size()
        if len(ground) > cap:
            raise GroundSetTooLarge(f"ground set of size {len(ground)} exceeds cap {cap}")
        self._ground = ground
        self._pos = {g: i for i, g in enumerate(ground)}
        self._oracle = oracle
        if table is not None:
            table = np.asarray(table, dtype=np.int16)
            if table.shape != (1 << len(ground),):
                raise MatroidError("rank table has the wrong length")
            table.setflags(write=False)
        self._table = table
        self._builder = table_builder
        self._memo: dict[int, int] = {}
        self._lock = threading.Lock()
        self._rank: Optional[int] = None
        self.source = source
        self.name = name

    # -- ground set -----------------------------------------------------
    @property
    def ground(self) -> tuple[int, ...]:
        return self._ground

    @property
    def size(self) -> int:
        return len(self._ground)

    def __len__(self) -> int:
        return len(self._ground)

    @property
    def full_mask(self) -> int:
        return (1 << len(self._ground)) - 1

    def position(self, label: int) -> int:
        try:
            return self._pos[label]
        except KeyError:
            raise MatroidError(f"element {label!r} is not in the ground set") from None

    def mask(self, X: Iterable[int]) -> int:
        """Bitmask of a set of labels; unknown labels raise ``MatroidError``."""
        if isinstance(X, (int, np.integer)):
            raise MatroidError("expected a collection of labels, got a single value")
        m = 0
        for x in X:
            m |= 1 << self.position(x)
        return m

    def subset(self, mask: int) -> frozenset:
        return frozenset(self._ground[i] for i in bits_of(mask))

    def labels_of(self, mask: int) -> tuple[int, ...]:
        return tuple(self._ground[i] for i in bits_of(mask))

    # -- rank -----------------------------------------------------------
    @property
    def has_table(self) -> bool:
        return len(self._ground) <= TABLE_CAP

    @property
    def table(self) -> np.ndarray:
        """Full rank table indexed by local mask (read-only)."""
        if self._table is None:
            if len(self._ground) > TABLE_CAP:
                raise GroundSetTooLarge(
                    f"exhaustive rank table unavailable for {len(self._ground)} > {TABLE_CAP} elements"
                )
            with self._lock:
                if self._table is None:
                    if self._builder is not None:
                        t = np.asarray(self._builder(), dtype=np.int16)
                    else:
                        t = np.fromiter(
                            (self._oracle(m) for m in range(1 << len(self._ground))),
                            dtype=np.int16,
                            count=1 << len(self._ground),
                        )
                    t.setflags(write=False)
                    self._table = t
                    self._builder = None
        return self._table

    def rank_mask(self, mask: int) -> int:
        if len(self._ground) <= TABLE_CAP:
            return int(self.table[mask])
        try:
            return self._memo[mask]
        except KeyError:
            pass
        r = int(self._oracle(mask))
        with self._lock:
            self._memo[mask] = r
        return r

    @property
    def full_rank(self) -> int:
        if self._rank is None:
            self._rank = self.rank_mask(self.full_mask)
        return self._rank

    def rank(self, X: Optional[Iterable[int]] = None) -> int:
        if X is None:
            return self.full_rank
        return self.rank_mask(self.mask(X))

    def corank_mask(self, mask: int) -> int:
        return popcount(mask) + self.rank_mask(self.full_mask ^ mask) - self.full_rank

    # -- derived matroids -----------------------------------------------
    def dual(self) -> "Matroid":
        base = self
        full = self.full_mask
        r = self.full_rank

        def oracle(m: int) -> int:
            return popcount(m) + base.rank_mask(full ^ m) - r

        builder = None
        if self.has_table:
            def builder() -> np.ndarray:
                t = base.table
                return popcount_table(base.size) + t[::-1] - t[-1]

        src = {"type": "dual", "base": self.source} if self.source is not None else None
        return Matroid(self._ground, oracle, table_builder=builder, source=src)

    def minor(self, contract: Iterable[int] = (), delete: Iterable[int] = ()) -> "Matroid":
        C = frozenset(contract)
        D = frozenset(delete)
        if C & D:
            raise MatroidError(f"contract and delete sets overlap on {sorted(C & D)}")
        cmask = self.mask(C)
        dmask = self.mask(D)
        if not cmask and not dmask:
            return self
        keep = [i for i in range(self.size) if not (cmask | dmask) >> i & 1]
        ground = [self._ground[i] for i in keep]
        base = self
        rc = self.rank_mask(cmask)

        def oracle(m: int) -> int:
            return base.rank_mask(deposit(m, keep) | cmask) - rc

        builder = None
        if self.has_table:
            def builder() -> np.ndarray:
                return base.table[deposit_table(keep) | cmask] - rc

        src = None
        if self.source is not None:
            src = {
                "type": "minor",
                "base": self.source,
                "contract": sorted(C),
                "delete": sorted(D),
            }
        return Matroid(ground, oracle, table_builder=builder, source=src)

    def delete(self, D: Iterable[int]) -> "Matroid":
        return self.minor((), D)

    def contract(self, C: Iterable[int]) -> "Matroid":
        return self.minor(C, ())

    def restrict(self, X: Iterable[int]) -> "Matroid":
        keep = self.mask(X)
        return self.delete(self.labels_of(self.full_mask ^ keep))

    # -- comparison -----------------------------------------------------
    def same_rank_function(self, other: "Matroid") -> bool:
        if self._ground != other._ground:
            return False
        if self.has_table:
            return bool(np.array_equal(self.table, other.table))
        return all(self.rank_mask(m) == other.rank_mask(m) for m in range(1 << self.size))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.same_rank_function(other)

    def __hash__(self) -> int:
        if self.has_table:
            return hash((self._ground, self.table.tobytes()))
        return hash((self._ground, self.full_rank))

    def __repr__(self) -> str:
        label = self.name or (self.source or {}).get("type", "matroid")
        return f"<Matroid {label}: rank {self.full_rank} on {list(self._ground)}>"


@dataclass(frozen=True)
class MinorSpec:
    """The pair (C, D) describing the minor M / C \\ D."""

    contract: frozenset = frozenset()
    delete: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "contract", frozenset(self.contract))
        object.__setattr__(self, "delete", frozenset(self.delete))
        if self.contract & self.delete:
            raise MatroidError(
                f"contract and delete sets overlap on {sorted(self.contract & self.delete)}"
            )

    @property
    def removed(self) -> frozenset:
        return self.contract | self.delete

    def apply(self, M: Matroid) -> Matroid:
        return M.minor(self.contract, self.delete)

    def to_dict(self) -> dict:
        return {"contract": sorted(self.contract), "delete": sorted(self.delete)}


# -- backends -------------------------------------------------------------

def _labels(n: int, labels: Optional[Sequence[int]]) -> tuple[int, ...]:
    if labels is None:
        return tuple(range(n))
    labels = tuple(int(x) for x in labels)
    if len(labels) != n:
        raise MatroidError(f"expected {n} labels, got {len(labels)}")
    return labels


def _with_labels(src: dict, labels: Optional[Sequence[int]], n: int) -> dict:
    if labels is not None and tuple(labels) != tuple(range(n)):
        src = dict(src, labels=list(labels))
    return src


def uniform(r: int, n: int, labels: Optional[Sequence[int]] = None) -> Matroid:
    """The uniform matroid U(r, n)."""
    if not 0 <= r <= n:
        raise MatroidError(f"U({r},{n}) needs 0 <= r <= n")
    ground = _labels(n, labels)

    def builder() -> np.ndarray:
        return np.minimum(popcount_table(n), r)

    return Matroid(
        ground,
        lambda m: min(popcount(m), r),
        table_builder=builder if n <= TABLE_CAP else None,
        source=_with_labels({"type": "uniform", "rank": r, "size": n}, labels, n),
        name=f"U({r},{n})",
    )


def linear(field: int, matrix: Sequence[Sequence[int]], labels: Optional[Sequence[int]] = None,
           *, num_columns: Optional[int] = None) -> Matroid:
    """Column matroid of a matrix over GF(2) or GF(3)."""
    if field not in linalg.FIELDS:
        raise MatroidError(f"unsupported field GF({field}); only GF(2) and GF(3)")
    try:
        cols = linalg.matrix_columns(matrix, field)
    except ValueError as exc:
        raise MatroidError(str(exc)) from None
    if not cols and num_columns:
        cols = [()] * num_columns
    n = len(cols)
    ground = _labels(n, labels)

    def oracle(m: int) -> int:
        return linalg.column_rank([cols[i] for i in bits_of(m)], field)

    def builder() -> np.ndarray:
        return linalg.rank_table(cols, field)

    src = {"type": "linear", "field": field, "matrix": [list(r) for r in matrix]}
    return Matroid(
        ground,
        oracle,
        table_builder=builder if n <= TABLE_CAP else None,
        source=_with_labels(src, labels, n),
    )


def graphic(vertices: int, edges: Sequence[Sequence[int]], labels: Optional[Sequence[int]] = None) -> Matroid:
    """Cycle matroid of a multigraph; loops and parallel edges allowed."""
    edges = [tuple(int(v) for v in e) for e in edges]
    for e in edges:
        if len(e) != 2 or not all(0 <= v < vertices for v in e):
            raise MatroidError(f"bad edge {e} for a graph on {vertices} vertices")
    n = len(edges)
    ground = _labels(n, labels)

    # incidence vectors over GF(2); a loop is the zero column
    cols = []
    for u, w in edges:
        col = [0] * vertices
        if u != w:
            col[u] = col[w] = 1
        cols.append(tuple(col))

    def oracle(m: int) -> int:
        parent = list(range(vertices))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        r = 0
        for i in bits_of(m):
            a, b = find(edges[i][0]), find(edges[i][1])
            if a != b:
                parent[a] = b
                r += 1
        return r

    def builder() -> np.ndarray:
        return linalg.rank_table(cols, 2)

    src = {"type": "graphic", "vertices": vertices, "edges": [list(e) for e in edges]}
    return Matroid(
        ground,
        oracle,
        table_builder=builder if n <= TABLE_CAP else None,
        source=_with_labels(src, labels, n),
    )


def from_table(ground: Sequence[int], table: np.ndarray, name: Optional[str] = None) -> Matroid:
    """Matroid from an explicit rank table; the caller vouches for the axioms."""
    table = np.asarray(table, dtype=np.int16)
    ground = tuple(ground)
    n = len(ground)
    src = _with_labels({"type": "table", "size": n, "ranks": table.tolist()}, ground, n)
    return Matroid(ground, lambda m: int(table[m]), table=table, source=src, name=name)


def is_circuit_hyperplane(M: Matroid, H: Iterable[int]) -> bool:
    h = M.mask(H)
    r = M.rank_mask(h)
    if r != M.full_rank - 1 or popcount(h) != r + 1:
        return False
    # circuit: every proper subset obtained by dropping one element is independent
    if any(M.rank_mask(h & ~(1 << i)) != r for i in bits_of(h)):
        return False
    # hyperplane: closed
    return all(M.rank_mask(h | (1 << i)) > r for i in bits_of(M.full_mask ^ h))


def relax(M: Matroid, H: Iterable[int]) -> Matroid:
    """Relax the circuit-hyperplane ``H``: its rank goes up by one."""
    H = frozenset(H)
    if not is_circuit_hyperplane(M, H):
        raise MatroidError(f"{sorted(H)} is not a circuit-hyperplane")
    h = M.mask(H)
    base = M

    def oracle(m: int) -> int:
        return base.rank_mask(m) + (1 if m == h else 0)

    builder = None
    if M.has_table:
        def builder() -> np.ndarray:
            t = base.table.copy()
            t[h] += 1
            return t

    src = None
    if M.source is not None:
        src = {"type": "relax", "base": M.source, "set": sorted(H)}
    return Matroid(M.ground, oracle, table_builder=builder, source=src)


def wheel_graph_edges(r: int) -> list[tuple[int, int]]:
    """Edges of the wheel W_r in fan order: spoke 1, rim 1-2, spoke 2, rim 2-3, ...

    Vertex 0 is the hub, vertices 1..r form the rim.  Element ``2i`` is the
    spoke to rim vertex ``i+1`` and element ``2i+1`` the rim edge leaving it.
    """
    if r < 2:
        raise MatroidError("wheels need at least two spokes")
    edges = []
    for i in range(1, r + 1):
        edges.append((0, i))
        edges.append((i, i % r + 1))
    return edges


def wheel(r: int) -> Matroid:
    """Cycle matroid M(W_r) of the wheel with ``r`` spokes."""
    M = graphic(r + 1, wheel_graph_edges(r))
    M.name = f"M(W_{r})"
    return M


def wheel_rim(r: int) -> frozenset:
    return frozenset(range(1, 2 * r, 2))


def whirl(r: int) -> Matroid:
    """The whirl W^r: the wheel with its rim circuit-hyperplane relaxed."""
    M = relax(wheel(r), wheel_rim(r))
    M.name = f"W^{r}"
    return M


# -- operations -----------------------------------------------------------

def rank(M: Matroid, X: Iterable[int]) -> int:
    return M.rank(X)


def dual(M: Matroid) -> Matroid:
    return M.dual()


def delete(M: Matroid, D: Iterable[int]) -> Matroid:
    return M.delete(D)


def contract(M: Matroid, C: Iterable[int]) -> Matroid:
    return M.contract(C)


def minor(M: Matroid, spec: MinorSpec) -> Matroid:
    return spec.apply(M)


def closure_mask(M: Matroid, mask: int) -> int:
    r = M.rank_mask(mask)
    out = mask
    for i in bits_of(M.full_mask ^ mask):
        if M.rank_mask(mask | (1 << i)) == r:
            out |= 1 << i
    return out


def coclosure_mask(M: Matroid, mask: int) -> int:
    r = M.corank_mask(mask)
    out = mask
    for i in bits_of(M.full_mask ^ mask):
        if M.corank_mask(mask | (1 << i)) == r:
            out |= 1 << i
    return out


def closure(M: Matroid, X: Iterable[int]) -> frozenset:
    return M.subset(closure_mask(M, M.mask(X)))


def coclosure(M: Matroid, X: Iterable[int]) -> frozenset:
    return M.subset(coclosure_mask(M, M.mask(X)))


def full_closure_mask(M: Matroid, mask: int) -> int:
    while True:
        nxt = coclosure_mask(M, closure_mask(M, mask))
        if nxt == mask:
            return mask
        mask = nxt


def full_closure(M: Matroid, X: Iterable[int]) -> frozenset:
    """Smallest set containing X that is both closed and coclosed."""
    return M.subset(full_closure_mask(M, M.mask(X)))


def is_closed(M: Matroid, X: Iterable[int]) -> bool:
    m = M.mask(X)
    return closure_mask(M, m) == m


def loops(M: Matroid) -> frozenset:
    return frozenset(M.ground[i] for i in range(M.size) if M.rank_mask(1 << i) == 0)


def coloops(M: Matroid) -> frozenset:
    return frozenset(M.ground[i] for i in range(M.size) if M.corank_mask(1 << i) == 0)


def _sorted_sets(sets: Iterable[frozenset]) -> list[frozenset]:
    return sorted(sets, key=lambda s: tuple(sorted(s)))


def parallel_classes(M: Matroid) -> list[frozenset]:
    """Classes of the parallel relation on non-loops, sorted by least element."""
    classes: list[list[int]] = []
    for i in range(M.size):
        if M.rank_mask(1 << i) == 0:
            continue
        for cls in classes:
            if M.rank_mask((1 << cls[0]) | (1 << i)) == 1:
                cls.append(i)
                break
        else:
            classes.append([i])
    return _sorted_sets(frozenset(M.ground[i] for i in cls) for cls in classes)


def series_classes(M: Matroid) -> list[frozenset]:
    return parallel_classes(M.dual())


def _three_sets_like_u23(M: Matroid, rank_of: Callable[[int], int]) -> list[frozenset]:
    out = []
    for a, b, c in itertools.combinations(range(M.size), 3):
        m = (1 << a) | (1 << b) | (1 << c)
        if rank_of(m) != 2:
            continue
        if all(rank_of(m & ~(1 << x)) == 2 for x in (a, b, c)):
            out.append(M.subset(m))
    return _sorted_sets(out)


def triangles(M: Matroid) -> list[frozenset]:
    """3-element sets T with M|T isomorphic to U(2,3)."""
    return _three_sets_like_u23(M, M.rank_mask)


def triads(M: Matroid) -> list[frozenset]:
    return _three_sets_like_u23(M, M.corank_mask)


def _simplify_masks(M: Matroid) -> tuple[int, list[int]]:
    drop = 0
    for i in range(M.size):
        if M.rank_mask(1 << i) == 0:
            drop |= 1 << i
    for cls in parallel_classes(M):
        rest = sorted(cls)[1:]
        drop |= M.mask(rest)
    return drop, [M.ground[i] for i in bits_of(M.full_mask ^ drop)]


def simplify(M: Matroid) -> tuple[Matroid, tuple[int, ...]]:
    """si(M): delete loops and all but the least label of each parallel class."""
    drop, kept = _simplify_masks(M)
    return M.delete(M.labels_of(drop)), tuple(kept)


def cosimplify(M: Matroid) -> tuple[Matroid, tuple[int, ...]]:
    """co(M): contract coloops and all but the least label of each series class."""
    drop, kept = _simplify_masks(M.dual())
    return M.contract(M.labels_of(drop)), tuple(kept)


def circuit_masks(M: Matroid, max_size: Optional[int] = None) -> list[int]:
    n = M.size
    if M.has_table:
        t = M.table
        pop = popcount_table(n)
        idx = index_table(n)
        indep = t == pop
        ok = ~indep
        for b in range(n):
            has = (idx >> b) & 1 == 1
            ok &= ~has | indep[idx ^ (1 << b)]
        if max_size is not None:
            ok &= pop <= max_size
        masks = [int(m) for m in np.nonzero(ok)[0]]
    else:
        masks = []
        top = n if max_size is None else min(n, max_size)
        for k in range(1, top + 1):
            for combo in itertools.combinations(range(n), k):
                m = sum(1 << i for i in combo)
                if M.rank_mask(m) == k - 1 and all(
                    M.rank_mask(m & ~(1 << i)) == k - 1 for i in combo
                ):
                    masks.append(m)
    return sorted(masks, key=lex_key)


def circuits(M: Matroid, max_size: Optional[int] = None) -> list[frozenset]:
    """All circuits (optionally of size at most ``max_size``) in lexicographic order."""
    return [M.subset(m) for m in circuit_masks(M, max_size)]


def is_loopless_coloopless(M: Matroid) -> bool:
    return not loops(M) and not coloops(M)


# -- minor containment ----------------------------------------------------

def _check_labels(M: Matroid, N: Matroid) -> None:
    missing = set(N.ground) - set(M.ground)
    if missing:
        raise MatroidError(f"labels {sorted(missing)} of N are not in E(M)")


def has_minor(M: Matroid, N: Matroid) -> Optional[MinorSpec]:
    """Find (C, D) with M / C \\ D equal to N on N's own labels.

    Only contraction sets independent in M are tried: contracting a dependent
    set is the same as contracting a basis of it and deleting the rest.
    Candidates are visited in lexicographic order of C.
    """
    _check_labels(M, N)
    rest = [i for i in range(M.size) if M.ground[i] not in set(N.ground)]
    npos = [M.position(g) for g in N.ground]
    nmask = sum(1 << p for p in npos)
    target_rank = N.full_rank
    use_table = M.has_table and N.has_table
    if use_table:
        spread = deposit_table(npos)
        ntable = N.table
        mtable = M.table
    singles = [N.rank_mask(1 << i) for i in range(N.size)]

    def matches(cmask: int, rc: int) -> bool:
        if M.rank_mask(cmask | nmask) - rc != target_rank:
            return False
        for i, p in enumerate(npos):
            if M.rank_mask(cmask | (1 << p)) - rc != singles[i]:
                return False
        if use_table:
            return bool(np.array_equal(mtable[spread | cmask] - rc, ntable))
        return all(
            M.rank_mask(deposit(m, npos) | cmask) - rc == N.rank_mask(m)
            for m in range(1 << N.size)
        )

    # depth-first in lexicographic order over independent subsets of ``rest``
    def search(start: int, cmask: int, rc: int) -> Optional[int]:
        if matches(cmask, rc):
            return cmask
        if rc >= M.full_rank:
            return None
        for j in range(start, len(rest)):
            bit = 1 << rest[j]
            if M.rank_mask(cmask | bit) == rc + 1:
                # contracting further can only lower ranks within E(N)
                if M.rank_mask(cmask | bit | nmask) - (rc + 1) < target_rank:
                    continue
                found = search(j + 1, cmask | bit, rc + 1)
                if found is not None:
                    return found
        return None

    found = search(0, 0, 0)
    if found is None:
        return None
    restmask = sum(1 << i for i in rest)
    return MinorSpec(M.subset(found), M.subset(restmask & ~found))


def as_minor(M: Matroid, N) -> Matroid:
    """Accept either a matroid on a subset of E(M) or a MinorSpec of M."""
    if isinstance(N, MinorSpec):
        return N.apply(M)
    if isinstance(N, Matroid):
        _check_labels(M, N)
        return N
    raise TypeError(f"expected a Matroid or MinorSpec, got {type(N).__name__}")


def is_connected(M: Matroid) -> bool:
    """No 1-separation: every proper nonempty subset has positive connectivity."""
    if M.size <= 1:
        return True
    full = M.full_mask
    r = M.full_rank
    if M.has_table:
        t = M.table
        lam = t + t[::-1] - r
        return not bool((lam[1:-1] == 0).any())
    return all(
        M.rank_mask(m) + M.rank_mask(full ^ m) - r > 0 for m in range(1, full)
    )


def _normalise_spec(M: Matroid, spec: MinorSpec) -> tuple[int, int]:
    """Rewrite (C, D) so that C is independent and D coindependent in M."""
    cmask = M.mask(spec.contract)
    dmask = M.mask(spec.delete)
    basis = 0
    for i in bits_of(cmask):
        if M.rank_mask(basis | (1 << i)) > M.rank_mask(basis):
            basis |= 1 << i
    dmask |= cmask & ~basis
    cmask = basis
    Mc = M.contract(M.labels_of(cmask))
    cob = 0
    for i in bits_of(dmask):
        local = Mc.mask([M.ground[i]])
        trial = Mc.mask(M.labels_of(cob)) | local
        if Mc.corank_mask(trial) == popcount(trial):
            cob |= 1 << i
    cmask |= dmask & ~cob
    return cmask, cob


def remove_loops_coloops_minor(M: Matroid, spec: MinorSpec) -> MinorSpec:
    """Enlarge the minor M / C \\ D until it has no loops or coloops.

    Each loop ``e`` of the current minor lies in a circuit inside C + e;
    un-contracting one other element ``f`` of that circuit puts ``e`` and
    ``f`` in parallel.  Coloops are handled dually through cocircuits inside
    D + e.  Every step adds one element, so the result has at most
    |E(N)| + l elements when N has l loops and coloops.
    """
    if not is_connected(M):
        raise MatroidError("M must be connected")
    cmask, dmask = _normalise_spec(M, spec)
    while True:
        retained = M.full_mask & ~(cmask | dmask)
        changed = False
        for i in bits_of(retained):
            bit = 1 << i
            # loop of M / C \ D: e is spanned by C
            if M.rank_mask(cmask | bit) == M.rank_mask(cmask):
                circuit = cmask | bit
                for j in bits_of(cmask):
                    trial = circuit & ~(1 << j)
                    if M.rank_mask(trial) == M.rank_mask(trial & ~bit):
                        circuit = trial
                f = min(bits_of(circuit & ~bit))
                cmask &= ~(1 << f)
                changed = True
                break
            # coloop of M / C \ D: e is spanned by D in the dual
            if M.corank_mask(dmask | bit) == M.corank_mask(dmask):
                cocircuit = dmask | bit
                for j in bits_of(dmask):
                    trial = cocircuit & ~(1 << j)
                    if M.corank_mask(trial) == M.corank_mask(trial & ~bit):
                        cocircuit = trial
                f = min(bits_of(cocircuit & ~bit))
                dmask &= ~(1 << f)
                changed = True
                break
        if not changed:
            break
    out = MinorSpec(M.subset(cmask), M.subset(dmask))
    Nprime = out.apply(M)
    if not is_loopless_coloopless(Nprime):
        raise LemmaViolation("enlarged minor still has loops or coloops")
    return out
