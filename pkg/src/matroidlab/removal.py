"""Finding sets whose deletion or contraction keeps 3-connectivity and a minor.

The constructive pipeline grows a mixed removal set (C, D), studies the
bipartite restoration graph on C + D, and converts an imbalance between
contracted and deleted elements into a pure deletion or pure contraction.
Every intermediate claim is re-checked against direct 3-connectivity and
minor tests; a failed check raises :class:`LemmaViolation`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .connectivity import (
    CONTRACT,
    DELETE,
    Fan,
    bixby_branch,
    fan_end_removal,
    find_fans,
    is_3_connected,
    remove,
    three_connected_with_minor,
)
from .core import (
    Matroid,
    MinorSpec,
    as_minor,
    closure_mask,
    cosimplify,
    has_minor,
    is_loopless_coloopless,
    simplify,
    triangles,
)
from .errors import LemmaViolation, MatroidError
from .isomorphism import ISO_CAP, has_isomorphic_minor
from .tangle import (
    Tangle,
    as_dual_tangle,
    branch_width,
    inherit_tangle,
    long_lines,
    removal_tags,
    tangle_closure,
    tangle_matroid,
    tangle_rank,
)


def _flip(op: str) -> str:
    return CONTRACT if op == DELETE else DELETE


# -- restoration graph ------------------------------------------------------

def restore(M: Matroid, C: Iterable[int], D: Iterable[int], Z: Iterable[int]) -> Matroid:
    """M / (C - Z) \\ (D - Z): undo the removal of the elements of Z."""
    C, D, Z = frozenset(C), frozenset(D), frozenset(Z)
    if not Z <= C | D:
        raise MatroidError(f"{sorted(Z - (C | D))} are not removed elements")
    return M.minor(C - Z, D - Z)


@dataclass(frozen=True)
class RestorationGraph:
    M: Matroid = field(compare=False, repr=False)
    C: frozenset
    D: frozenset
    edges: frozenset
    privileged: frozenset

    @property
    def vertices(self) -> frozenset:
        return self.C | self.D

    def neighbours(self, v: int, within: Optional[Iterable[int]] = None) -> frozenset:
        out = {d for c, d in self.edges if c == v} | {c for c, d in self.edges if d == v}
        if within is not None:
            out &= set(within)
        return frozenset(out)

    def neighbourhood(self, S: Iterable[int], within: Optional[Iterable[int]] = None) -> frozenset:
        out: set = set()
        for v in S:
            out |= self.neighbours(v, within)
        return frozenset(out)


def restoration_graph(M: Matroid, T: Optional[Tangle], C: Iterable[int], D: Iterable[int]) -> RestorationGraph:
    """The bipartite graph on C + D whose edges cd mark 3-connected restorations
    of the pair; also records which single restorations are 3-connected."""
    C, D = frozenset(C), frozenset(D)
    if C & D:
        raise MatroidError("C and D must be disjoint")
    if not is_3_connected(M):
        raise MatroidError("M must be 3-connected")
    if not is_3_connected(M.minor(C, D)):
        raise MatroidError("M / C \\ D must be 3-connected")
    if T is not None and tangle_rank(T, C | D) != len(C | D):
        raise MatroidError("C + D must be independent in the tangle matroid")
    edges = frozenset(
        (c, d)
        for c in sorted(C)
        for d in sorted(D)
        if is_3_connected(restore(M, C, D, {c, d}))
    )
    privileged = frozenset(e for e in C | D if is_3_connected(restore(M, C, D, {e})))
    G = RestorationGraph(M, C, D, edges, privileged)
    if T is not None:
        lonely = [v for v in G.vertices if v not in privileged and not G.neighbours(v)]
        if lonely:
            raise LemmaViolation(f"isolated non-privileged vertices {sorted(lonely)}")
    return G


def restorable(G: RestorationGraph, S: Iterable[int]) -> bool:
    """Whether G[S] has no isolated non-privileged vertex."""
    S = frozenset(S)
    if not S <= G.vertices:
        raise MatroidError("S must lie inside C + D")
    return all(v in G.privileged or G.neighbours(v, S) for v in S)


# -- single elements on long lines -------------------------------------------

def _keeps(M: Matroid, N: Matroid, e: int, op: str) -> bool:
    return three_connected_with_minor(remove(M, [e], op), N)


def remove_on_line(M: Matroid, T: Tangle, N, X: Iterable[int], f: int) -> tuple[int, str, str]:
    """Find e on the long line X (other than f) whose deletion or contraction
    keeps 3-connectivity and N.

    Returns ``(e, op, route)`` where ``route`` names the argument that found
    it: a maximal fan end, the both-minors/Bixby argument, or the final
    exhaustive scan of X - f.
    """
    N = as_minor(M, N)
    X = frozenset(X)
    if f not in X:
        raise MatroidError(f"{f} is not on the line")
    if T.order < 3:
        raise MatroidError("tangle order must be at least 3")
    if not is_3_connected(M):
        raise MatroidError("M must be 3-connected")
    if not is_loopless_coloopless(N):
        raise MatroidError("N must have no loops or coloops")
    if (X - {f}) & set(N.ground):
        raise MatroidError("X - f meets E(N)")
    if X not in long_lines(T):
        raise MatroidError("X is not a long line of the tangle matroid")
    pool = sorted(X - {f})

    # a long fan inside X: one of its ends works
    global_fans = {frozenset(F.elements) for F in find_fans(M)}
    for F in find_fans(M, within=X):
        if len(F) >= 4 and frozenset(F.elements) in global_fans:
            if len(set(F.elements) & set(N.ground)) <= 1:
                x, op = fan_end_removal(M, N, F)
                if x in pool:
                    return x, op, "fan-end"

    # elements removable both ways: Bixby plus the triangle argument
    both = [
        e for e in pool
        if has_minor(M.delete([e]), N) is not None and has_minor(M.contract([e]), N) is not None
    ]
    for e in both:
        for side in sorted(bixby_branch(M, e)):
            op = CONTRACT if side == "simplified-contraction" else DELETE
            if _keeps(M, N, e, op):
                return e, op, "bixby"
            host = M if op == CONTRACT else M.dual()
            for tri in triangles(host):
                if e not in tri:
                    continue
                for g in sorted(tri - {e, f}):
                    if g in pool and _keeps(M, N, g, _flip(op)):
                        return g, _flip(op), "bixby-triangle"

    # a simple contraction or cosimple deletion that keeps N
    for e in pool:
        for op in (CONTRACT, DELETE):
            minor = remove(M, [e], op)
            if has_minor(minor, N) is None:
                continue
            clean = simplify(minor)[0] if op == CONTRACT else cosimplify(minor)[0]
            if clean.size == minor.size and is_3_connected(minor):
                return e, op, "simple-removal"

    for e in pool:
        for op in (DELETE, CONTRACT):
            if _keeps(M, N, e, op):
                return e, op, "exhaustive"
    raise LemmaViolation(f"no element of the line {sorted(X)} minus {f} is removable")


# -- growing a mixed removal set --------------------------------------------

def growth_hypothesis_met(T: Tangle, t: int, s: int) -> bool:
    return T.order >= max(6, 2 * s + t + 1)


def _line_step(M: Matroid, T: Tangle, N: Matroid, C: frozenset, D: frozenset,
               H: frozenset, avoid: frozenset) -> Optional[tuple[int, str]]:
    """One application of the single-element lemma inside M / C \\ D."""
    Mp = M.minor(C, D)
    tags = removal_tags(C, D)
    if T.order - len(tags) < 3:
        return None
    Tp = inherit_tangle(T, tags)
    Hp = tangle_closure(Tp, H - C - D)
    if tangle_rank(Tp, Hp) >= Tp.order:
        return None
    lines = long_lines(Tp)
    outside = [e for e in Mp.ground if e not in Hp]
    for e in outside:
        if e in avoid:
            continue
        if not any(e in X for X in lines):
            for op in (DELETE, CONTRACT):
                if _keeps(Mp, N, e, op):
                    return e, op
    for e in outside:
        for X in lines:
            if e not in X:
                continue
            meet = X & Hp
            if len(meet) > 1:
                raise LemmaViolation("a long line meets the closed set in two elements")
            f = min(meet) if meet else min(X - {e})
            x, op, _ = remove_on_line(Mp, Tp, N, X, f)
            if x not in avoid:
                return x, op
    return None


def grow_removal_set(M: Matroid, T: Tangle, N, s: int) -> MinorSpec:
    """Greedily build disjoint C, D outside E(N) with M / C \\ D 3-connected,
    keeping N and raising the tangle rank of E(N) + C + D by one per element.

    Stops at size ``s`` or when no further element qualifies; the size
    reached is ``len(result.removed)``.
    """
    N = as_minor(M, N)
    if not is_loopless_coloopless(N):
        raise MatroidError("N must have no loops or coloops")
    EN = frozenset(N.ground)
    t = tangle_rank(T, EN)
    C: frozenset = frozenset()
    D: frozenset = frozenset()
    MT = tangle_matroid(T)
    while len(C | D) < s:
        H = MT.subset(closure_mask(MT, MT.mask(EN | C | D)))
        step = _line_step(M, T, N, C, D, H, avoid=H)
        if step is None:
            Mp = M.minor(C, D)
            for e in Mp.ground:
                if e in H:
                    continue
                for op in (DELETE, CONTRACT):
                    if _keeps(Mp, N, e, op):
                        step = (e, op)
                        break
                if step is not None:
                    break
        if step is None:
            break
        e, op = step
        if e in H:
            raise LemmaViolation(f"{e} lies in the tangle closure")
        if op == DELETE:
            D = D | {e}
        else:
            C = C | {e}
        if tangle_rank(T, EN | C | D) != t + len(C | D):
            raise LemmaViolation("tangle rank bookkeeping failed")
        if not three_connected_with_minor(M.minor(C, D), N):
            raise LemmaViolation("grown minor lost 3-connectivity or N")
    return MinorSpec(C, D)


# -- simultaneous fan-end removal -------------------------------------------

def simultaneous_fan_removal(M: Matroid, T: Tangle, N, lines: Sequence[Iterable[int]],
                             fans: Sequence, ends: Sequence[int]) -> Matroid:
    """Delete one end from each of several fans on skew long lines at once."""
    N = as_minor(M, N)
    lines = [frozenset(X) for X in lines]
    fans = [tuple(F.elements if isinstance(F, Fan) else F) for F in fans]
    r = len(lines)
    if not (len(fans) == len(ends) == r):
        raise MatroidError("need one fan and one end per line")
    if not is_3_connected(M):
        raise MatroidError("M must be 3-connected")
    union = frozenset().union(*lines) if lines else frozenset()
    if tangle_rank(T, union) != 2 * r:
        raise MatroidError("lines are not skew in the tangle matroid")
    maximal = {frozenset(F.elements) for F in find_fans(M)}
    for X, F, e in zip(lines, fans, ends):
        if X & set(N.ground):
            raise MatroidError("a line meets E(N)")
        if len(F) < 4 or not set(F) <= X or frozenset(F) not in maximal:
            raise MatroidError("each fan must be maximal, of length >= 4, inside its line")
        if e not in F or not _keeps(M, N, e, DELETE):
            raise MatroidError(f"deleting {e} does not keep 3-connectivity and N")

    cur, curT = M, T
    remaining = list(range(r))
    while remaining:
        i = remaining.pop()
        cur = cur.delete([ends[i]])
        curT = inherit_tangle(curT, {ends[i]: DELETE})
        if not three_connected_with_minor(cur, N):
            raise LemmaViolation("intermediate deletion lost 3-connectivity or N")
        MT = tangle_matroid(curT)
        for j in remaining:
            if closure_mask(MT, MT.mask(lines[j])) != MT.mask(lines[j]):
                raise LemmaViolation(f"line {sorted(lines[j])} is no longer closed")
    return cur


# -- balance and induced matchings ------------------------------------------

def balance_extract(M: Matroid, T: Tangle, C: Iterable[int], D: Iterable[int], k: int) -> frozenset:
    """C' inside C with |C'| >= k and M / C' 3-connected, given |C| - |D| >= k."""
    C, D = frozenset(C), frozenset(D)
    if len(C) - len(D) < k:
        raise MatroidError("need |C| - |D| >= k")
    G = restoration_graph(M, T, C, D)
    cover: list[int] = []
    for d in sorted(D - G.privileged):
        if not G.neighbours(d) & set(cover):
            cover.append(min(G.neighbours(d)))
    for c in sorted(cover, reverse=True):
        rest = set(cover) - {c}
        if all(G.neighbours(d) & rest for d in D - G.privileged):
            cover.remove(c)
    Cp = C - set(cover)
    if not restorable(G, set(cover) | D):
        raise LemmaViolation("hitting set leaves an isolated non-privileged vertex")
    if len(Cp) < k or not is_3_connected(M.contract(Cp)):
        raise LemmaViolation("M / C' is not 3-connected")
    return Cp


def _balanced_removal(M: Matroid, T: Tangle, C: frozenset, D: frozenset, k: int) -> tuple[frozenset, str]:
    if len(C) - len(D) >= k:
        return balance_extract(M, T, C, D, k), CONTRACT
    if len(D) - len(C) >= k:
        return balance_extract(M.dual(), as_dual_tangle(T), D, C, k), DELETE
    raise MatroidError("restoration graph is balanced within k")


def max_induced_matching(G: RestorationGraph, allowed: Optional[Iterable[int]] = None) -> list[tuple[int, int]]:
    """A maximum induced matching of G using only ``allowed`` vertices
    (default: the non-privileged ones), lexicographically first among maxima."""
    allowed = frozenset(G.vertices - G.privileged if allowed is None else allowed)
    edges = sorted((c, d) for c, d in G.edges if c in allowed and d in allowed)
    best: list = []

    def grow(i: int, chosen: list, used: set):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) + (len(edges) - i) <= len(best):
            return
        for j in range(i, len(edges)):
            c, d = edges[j]
            if c in used or d in used:
                continue
            if G.neighbours(c) & used or G.neighbours(d) & used:
                continue
            grow(j + 1, chosen + [(c, d)], used | {c, d})

    grow(0, [], set())
    return best


def _is_induced_matching(G: RestorationGraph, H: Sequence[tuple[int, int]]) -> bool:
    verts = [v for e in H for v in e]
    if len(set(verts)) != len(verts):
        return False
    for c, d in H:
        if (c, d) not in G.edges:
            return False
        others = set(verts) - {c, d}
        if G.neighbours(c) & others or G.neighbours(d) & others:
            return False
    return True


def induced_matching_boost(M: Matroid, T: Tangle, N, C: Iterable[int], D: Iterable[int], k: int,
                           matching: Optional[Sequence[tuple[int, int]]] = None) -> tuple[frozenset, str]:
    """Turn an induced matching of at least 2k non-privileged edges into a
    pure contraction or deletion set of size >= k.

    Each matched pair sits inside a fan of the partially restored matroid;
    removing one fan end per pair and then rebalancing gives the answer.
    """
    N = as_minor(M, N)
    C, D = frozenset(C), frozenset(D)
    EN = frozenset(N.ground)
    if k <= 0:
        return frozenset(), CONTRACT
    t = tangle_rank(T, EN)
    if tangle_rank(T, EN | C | D) != t + len(C | D):
        raise MatroidError("E(N) + C + D must extend independently in the tangle matroid")
    if has_minor(M.minor(C, D), N) is None:
        raise MatroidError("M / C \\ D must keep N")
    G = restoration_graph(M, T, C, D)
    if matching is None:
        matching = max_induced_matching(G)
    matching = [tuple(e) for e in matching]
    if len(matching) < 2 * k or not _is_induced_matching(G, matching) or any(
        v in G.privileged for e in matching for v in e
    ):
        raise MatroidError("need an induced matching with 2k edges and no privileged vertices")

    if len(D) > len(C):
        # dualise so that contractions are in the majority
        X, op = induced_matching_boost(
            M.dual(), as_dual_tangle(T), N.dual(), D, C, k,
            matching=[(d, c) for c, d in matching],
        )
        return X, _flip(op)

    r = len(C) - len(D)
    if r >= k:
        return _checked(M, T, N, *_balanced_removal(M, T, C, D, k), k)

    VH = frozenset(v for e in matching for v in e)
    Mp = restore(M, C, D, VH)
    if not is_3_connected(Mp):
        raise LemmaViolation("restoring the matching is not 3-connected")
    Tp = inherit_tangle(T, removal_tags(C - VH, D - VH))
    fans = find_fans(Mp)
    ends = {}
    lines = {}
    for c, d in matching:
        F = next((F for F in fans if len(F) >= 4 and {c, d} <= set(F.internal)), None)
        if F is None:
            raise LemmaViolation(f"{c}, {d} are not internal to a common fan of length >= 4")
        ends[(c, d)] = (F,) + fan_end_removal(Mp, N, F)
        lines[(c, d)] = tangle_closure(Tp, {c, d})

    deletable = [e for e in matching if ends[e][2] == DELETE]
    contractible = [e for e in matching if ends[e][2] == CONTRACT]
    if len(deletable) >= k + r:
        S = frozenset(ends[e][1] for e in deletable)
        simultaneous_fan_removal(
            Mp, Tp, N, [lines[e] for e in deletable], [ends[e][0] for e in deletable],
            [ends[e][1] for e in deletable],
        )
        Cp, Dp = C - VH, (D - VH) | S
    elif len(contractible) >= k - r:
        S = frozenset(ends[e][1] for e in contractible)
        simultaneous_fan_removal(
            Mp.dual(), as_dual_tangle(Tp), N.dual(), [lines[e] for e in contractible],
            [ends[e][0] for e in contractible], [ends[e][1] for e in contractible],
        )
        Cp, Dp = (C - VH) | S, D - VH
    else:
        raise LemmaViolation("neither end class is large enough")
    if tangle_rank(T, Cp | Dp) != len(Cp | Dp):
        raise LemmaViolation("rebalanced set is not independent in the tangle matroid")
    return _checked(M, T, N, *_balanced_removal(M, T, Cp, Dp, k), k)


def _checked(M: Matroid, T: Tangle, N: Matroid, X: frozenset, op: str, k: int) -> tuple[frozenset, str]:
    EN = frozenset(N.ground)
    t = tangle_rank(T, EN)
    if len(X) < k or tangle_rank(T, EN | X) != t + len(X):
        raise LemmaViolation("removal set fails the size or tangle-rank condition")
    if not three_connected_with_minor(remove(M, X, op), N):
        raise LemmaViolation("removal set loses 3-connectivity or N")
    return X, op


# -- the main search ----------------------------------------------------------

@dataclass(frozen=True)
class RemovalContext:
    M: Matroid
    T: Tangle
    N_spec: MinorSpec
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise MatroidError("k must be non-negative")
        if not self.T.host.same_rank_function(self.M):
            raise MatroidError("tangle must live on M")
        if not is_3_connected(self.M):
            raise MatroidError("M must be 3-connected")
        if not is_loopless_coloopless(self.N):
            raise MatroidError("N must have no loops or coloops")

    @cached_property
    def N(self) -> Matroid:
        return self.N_spec.apply(self.M)

    @cached_property
    def t(self) -> int:
        return tangle_rank(self.T, self.N.ground)


@dataclass(frozen=True)
class VertexPartition:
    P1: frozenset
    P2: frozenset
    Q1: frozenset
    Q2: frozenset
    T1: frozenset
    T2: frozenset
    U1: frozenset
    U2: frozenset
    S1: frozenset
    S2: frozenset
    matching: tuple
    balance: int

    def sizes(self) -> dict:
        return {name: len(getattr(self, name)) for name in
                ("P1", "P2", "Q1", "Q2", "T1", "T2", "U1", "U2", "S1", "S2")}


def _minimal_cover(G: RestorationGraph, pool: Sequence[int], targets: Iterable[int], within) -> frozenset:
    targets = set(targets)
    chosen: list[int] = []
    for v in sorted(targets):
        if G.neighbours(v, chosen):
            continue
        options = sorted(G.neighbours(v, pool))
        if not options:
            raise LemmaViolation(f"{v} has no neighbour in the matching")
        chosen.append(options[0])
    for c in sorted(chosen, reverse=True):
        rest = [x for x in chosen if x != c]
        if all(G.neighbours(v, rest) for v in targets):
            chosen = rest
    return frozenset(chosen)


def _expand(G: RestorationGraph, base: frozenset, pool: Iterable[int], within) -> frozenset:
    """Largest superset S' of base inside pool with |N(S')| >= 2|S'|."""
    extra = sorted(set(pool) - base)
    for size in range(len(extra), -1, -1):
        for add in itertools.combinations(extra, size):
            S = base | set(add)
            if len(G.neighbourhood(S, within)) >= 2 * len(S):
                return S
    return base


def vertex_partition(G: RestorationGraph) -> VertexPartition:
    """Split C + D into privileged (P), privileged-only neighbours (Q),
    neighbourhoods of the expanded cover sets (U) and the rest of a maximal
    matching (T)."""
    C, D = G.C, G.D
    P1, P2 = C & G.privileged, D & G.privileged
    Q1 = frozenset(c for c in C - P1 if G.neighbours(c) <= P2)
    Q2 = frozenset(d for d in D - P2 if G.neighbours(d) <= P1)
    Cp, Dp = C - P1 - Q1, D - P2 - Q2
    within = Cp | Dp
    matching = []
    used: set = set()
    for c in sorted(Cp):
        for d in sorted(G.neighbours(c, Dp)):
            if d not in used:
                matching.append((c, d))
                used |= {c, d}
                break
    R = frozenset(used)
    S1 = _minimal_cover(G, sorted(R & Cp), Dp - R, within)
    S2 = _minimal_cover(G, sorted(R & Dp), Cp - R, within)
    S1p = _expand(G, S1, R & Cp, within)
    S2p = _expand(G, S2, R & Dp, within)
    U2 = G.neighbourhood(S1p, within)
    U1 = G.neighbourhood(S2p, within)
    T2 = (R & Dp) - U2
    T1 = (R & Cp) - U1
    part = VertexPartition(P1, P2, Q1, Q2, T1, T2, U1, U2, S1p, S2p, tuple(matching), len(C) - len(D))
    if P1 | Q1 | U1 | T1 != C or len(P1) + len(Q1) + len(U1) + len(T1) != len(C):
        raise LemmaViolation("P1, Q1, U1, T1 do not partition C")
    if P2 | Q2 | U2 | T2 != D or len(P2) + len(Q2) + len(U2) + len(T2) != len(D):
        raise LemmaViolation("P2, Q2, U2, T2 do not partition D")
    return part


@dataclass(frozen=True)
class RemovalResult:
    found: bool
    removed: frozenset
    operation: Optional[str]
    stage: str
    grown: MinorSpec

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "removed": sorted(self.removed),
            "operation": self.operation,
            "stage": self.stage,
            "grown": self.grown.to_dict(),
        }


def _restoration_moves(part: VertexPartition) -> list[tuple[str, frozenset]]:
    return [
        ("restore-P1", part.P1),
        ("restore-P2", part.P2),
        ("restore-S1-U2", part.S1 | part.U2),
        ("restore-S2-U1", part.S2 | part.U1),
        ("restore-S1-U2-Q2-P", part.U2 | part.S1 | part.Q2 | part.P1 | part.P2),
        ("restore-S2-U1-Q1-P", part.U1 | part.S2 | part.Q1 | part.P2 | part.P1),
    ]


def find_removal_set(ctx: RemovalContext) -> RemovalResult:
    """Search for k elements to delete (or contract) keeping 3-connectivity,
    the minor N, and independence over E(N) in the tangle matroid.

    Runs the constructive pipeline whether or not the tangle order is large
    enough to guarantee success; ``found=False`` with stage ``"exhausted"``
    means no stage fired.
    """
    M, T, N, k = ctx.M, ctx.T, ctx.N, ctx.k
    if k == 0:
        return RemovalResult(True, frozenset(), DELETE, "trivial", MinorSpec())
    grown = grow_removal_set(M, T, N, max(10 * k - 7, k))
    C, D = grown.contract, grown.delete
    if not C | D:
        return RemovalResult(False, frozenset(), None, "exhausted", grown)

    def finish(X: frozenset, op: str, stage: str) -> RemovalResult:
        chosen = frozenset(sorted(X)[:k])
        chosen, op = _checked(M, T, N, chosen, op, k)
        if len(chosen) != k:
            raise LemmaViolation("wrong removal size")
        return RemovalResult(True, chosen, op, stage, grown)

    if abs(len(C) - len(D)) >= k:
        return finish(*_balanced_removal(M, T, C, D, k), "balance")

    G = restoration_graph(M, T, C, D)
    part = vertex_partition(G)
    for name, Z in _restoration_moves(part):
        C1, D1 = C - Z, D - Z
        if abs(len(C1) - len(D1)) < k or not restorable(G, Z):
            continue
        if not is_3_connected(M.minor(C1, D1)):
            raise LemmaViolation(f"{name}: restorable set gives a non-3-connected matroid")
        return finish(*_balanced_removal(M, T, C1, D1, k), name)

    for name, Tside in (("matching-T1", part.T1), ("matching-T2", part.T2)):
        if len(Tside) < 2 * k:
            continue
        H = [e for e in part.matching if e[0] in Tside or e[1] in Tside]
        if not _is_induced_matching(G, H):
            raise LemmaViolation(f"{name} is not an induced matching")
        return finish(*induced_matching_boost(M, T, N, C, D, k, matching=H), name)
    return RemovalResult(False, frozenset(), None, "exhausted", grown)


def verify_removal(M: Matroid, T: Tangle, N, X: Iterable[int], op: str, k: int) -> bool:
    """Independent re-check of the four conditions on a removal set."""
    N = as_minor(M, N)
    X = frozenset(X)
    if len(X) != k or X & set(N.ground):
        return False
    EN = frozenset(N.ground)
    if tangle_rank(T, EN | X) != tangle_rank(T, EN) + k:
        return False
    minor = remove(M, X, op)
    return is_3_connected(minor) and has_minor(minor, N) is not None


def brute_force_oracle(M: Matroid, N, k: int) -> Optional[tuple[frozenset, str]]:
    """Lexicographically first k-set outside E(N) whose deletion or
    contraction is 3-connected and keeps N."""
    N = as_minor(M, N)
    pool = [e for e in M.ground if e not in set(N.ground)]
    for X in itertools.combinations(pool, k):
        for op in (DELETE, CONTRACT):
            if three_connected_with_minor(remove(M, X, op), N):
                return frozenset(X), op
    return None


# -- splitter ---------------------------------------------------------------

@dataclass(frozen=True)
class SplitterWitness:
    element: int
    operation: str
    variant: str


def splitter_check(M: Matroid, N, require_branch_width: bool = False) -> Optional[SplitterWitness]:
    """An element whose removal keeps 3-connectivity and N.

    The exact variant (N on its own labels) is tried first; if it fails and
    M is small enough, any element whose removal leaves a minor isomorphic
    to N is accepted.
    """
    N = as_minor(M, N)
    if not is_3_connected(M) or not is_3_connected(N):
        raise MatroidError("M and N must be 3-connected")
    if N.size >= M.size or has_minor(M, N) is None:
        raise MatroidError("N must be a proper minor of M")
    if require_branch_width and M.size <= ISO_CAP and branch_width(M) < 3:
        raise MatroidError("branch width of M must be at least 3")
    for e in M.ground:
        if e in N.ground:
            continue
        for op in (DELETE, CONTRACT):
            if _keeps(M, N, e, op):
                return SplitterWitness(e, op, "exact")
    if M.size > ISO_CAP:
        return None
    for e in M.ground:
        for op in (DELETE, CONTRACT):
            minor = remove(M, [e], op)
            if is_3_connected(minor) and has_isomorphic_minor(minor, N):
                return SplitterWitness(e, op, "isomorphic")
    return None


def splitter_isomorphic(M: Matroid, N: Matroid) -> Optional[SplitterWitness]:
    """The isomorphic-minor variant on its own (labels of N are ignored)."""
    for e in M.ground:
        for op in (DELETE, CONTRACT):
            minor = remove(M, [e], op)
            if is_3_connected(minor) and has_isomorphic_minor(minor, N):
                return SplitterWitness(e, op, "isomorphic")
    return None
