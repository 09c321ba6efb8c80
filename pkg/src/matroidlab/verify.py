"""Exhaustive checks of the structural facts the library relies on.

Each check runs over the corpus and counts the instances it examined and
the violations it found.  A suite report is plain JSON with sorted keys and
no timing information, so identical inputs give byte-identical output.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator, Optional

import numpy as np

from .bits import bits_of, deposit_table, index_table, popcount, popcount_table
from .connectivity import (
    CONTRACT,
    DELETE,
    bixby_branch,
    fan_end_removal,
    find_fans,
    guts_coguts_classify,
    is_3_connected,
    is_fan,
    is_k_connected,
    is_wheel_or_whirl,
    iter_fans,
    k_separations,
    lambda_table,
    remove,
    route_2sep_minor,
    route_2sep_one_contact,
    three_connected_with_minor,
    two_sep_refinements,
    _in_series_or_parallel,
    _triangle_triad_masks,
)
from .core import (
    Matroid,
    MinorSpec,
    circuit_masks,
    closure_mask,
    coclosure_mask,
    has_minor,
    is_connected,
    is_loopless_coloopless,
    relax,
    remove_loops_coloops_minor,
    triads,
    triangles,
    uniform,
    wheel,
    wheel_rim,
)
from .corpus import LCG, Entry, corpus, line_configurations
from .decomposition import DECOMPOSITION_CAP, branch_width_by_decomposition, decomposition_width
from .errors import LemmaViolation, MatroidError
from .isomorphism import ISO_CAP
from .removal import (
    RemovalContext,
    brute_force_oracle,
    find_removal_set,
    grow_removal_set,
    growth_hypothesis_met,
    remove_on_line,
    restoration_graph,
    restorable,
    restore,
    splitter_check,
    verify_removal,
)
from .tangle import (
    TANGLE_CAP,
    Tangle,
    _validate_masks,
    branch_width,
    enumerate_tangles,
    inherit_tangle,
    long_lines,
    tangle_matroid,
    tangle_rank_table,
    truncate,
)

SUITES = ("core", "connectivity", "tangle", "removal")

SUBSET_CAP = 10
MINOR_CAP = 8
TANGLE_CHECK_CAP = 8
LINE_CAP = 10
EXAMPLES = 3


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    violations: int = 0
    examples: list = field(default_factory=list)

    def ok(self, count: int = 1) -> None:
        self.checked += count

    def fail(self, message: str) -> None:
        self.checked += 1
        self.violations += 1
        if len(self.examples) < EXAMPLES:
            self.examples.append(message)

    def expect(self, condition: bool, message: Callable[[], str] | str) -> None:
        if condition:
            self.checked += 1
        else:
            self.fail(message() if callable(message) else message)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {
            "checked": self.checked,
            "violations": self.violations,
            "examples": list(self.examples),
            "passed": self.passed,
        }


class Workspace:
    """Corpus plus per-matroid caches shared between checks."""

    def __init__(self, seed: int = 1, max_n: int = 8, tangle_n: int = TANGLE_CHECK_CAP):
        self.seed = seed
        self.max_n = max_n
        self.tangle_n = min(tangle_n, max_n, TANGLE_CAP)
        self.entries: list[Entry] = corpus(seed, max_n)
        self._tangles: dict[int, list[Tangle]] = {}
        self._conn3: dict[int, bool] = {}

    def matroids(self, cap: int) -> Iterator[tuple[str, Matroid]]:
        for e in self.entries:
            if e.matroid.size <= cap:
                yield e.name, e.matroid

    def three_connected(self, M: Matroid) -> bool:
        key = id(M)
        if key not in self._conn3:
            self._conn3[key] = is_3_connected(M)
        return self._conn3[key]

    def tangles(self, M: Matroid) -> list[Tangle]:
        """Every tangle of every positive order."""
        key = id(M)
        if key not in self._tangles:
            out: list[Tangle] = []
            theta = 1
            while True:
                found = enumerate_tangles(M, theta)
                if not found:
                    break
                out.extend(found)
                theta += 1
            self._tangles[key] = out
        return self._tangles[key]

    def tangle_matroids(self) -> Iterator[tuple[str, Matroid]]:
        return self.matroids(self.tangle_n)

    @cached_property
    def line_tangles(self) -> list[tuple[str, Matroid, Tangle]]:
        """Tangles of order >= 3 with a long line, on 3-connected matroids.

        Drawn from corpus members up to LINE_CAP elements plus the fixed
        line configurations, which are the only source of skew lines.
        """
        out = []
        pool = list(self.matroids(min(self.max_n, LINE_CAP)))
        pool += [(e.name, e.matroid) for e in line_configurations()]
        for name, M in pool:
            if M.size < 4 or not self.three_connected(M):
                continue
            theta = 3
            while True:
                found = enumerate_tangles(M, theta)
                if not found:
                    break
                out.extend((name, M, T) for T in found if long_lines(T))
                theta += 1
        return out

    def digest(self) -> str:
        h = hashlib.sha256()
        for e in self.entries:
            h.update(e.name.encode())
            h.update(repr(e.matroid.ground).encode())
            h.update(e.matroid.table.tobytes())
        return h.hexdigest()


def _fmt(name: str, *parts) -> str:
    return name + ": " + ", ".join(str(p) for p in parts)


# -- core ---------------------------------------------------------------------

def check_rank_axioms(ws: Workspace) -> CheckResult:
    res = CheckResult("rank-axioms")
    for name, M in ws.matroids(SUBSET_CAP):
        n = M.size
        t = M.table.astype(np.int64)
        pop = popcount_table(n)
        idx = index_table(n)
        res.expect(t[0] == 0, _fmt(name, "rank of empty set"))
        res.expect(bool((t <= pop).all()), _fmt(name, "rank exceeds size"))
        for i in range(n):
            up = t[idx | (1 << i)]
            res.expect(bool(((up >= t) & (up <= t + 1)).all()), _fmt(name, "unit increase", i))
        bad = 0
        for X in range(1 << n):
            if ((t[X] + t) < (t[X & idx] + t[X | idx])).any():
                bad += 1
        res.expect(bad == 0, _fmt(name, "submodularity", bad))
        res.expect(M.dual().dual() == M, _fmt(name, "double dual"))
    return res


def check_closure_complement(ws: Workspace) -> CheckResult:
    """e in cl(A) iff e not in cl*(B) for every partition (A, B) of E - e."""
    res = CheckResult("closure-complement")
    for name, M in ws.matroids(SUBSET_CAP):
        n = M.size
        t = M.table.astype(np.int64)
        d = M.dual().table.astype(np.int64)
        idx = index_table(n)
        full = M.full_mask
        for i in range(n):
            e = 1 << i
            A = idx[(idx & e) == 0]
            B = full ^ e ^ A
            in_cl = t[A | e] == t[A]
            in_cocl = d[B | e] == d[B]
            res.expect(bool((in_cl != in_cocl).all()), _fmt(name, "element", M.ground[i]))
    return res


def check_minor_round_trip(ws: Workspace) -> CheckResult:
    """has_minor witnesses reproduce the requested minor exactly."""
    res = CheckResult("minor-round-trip")
    rng = LCG(ws.seed)
    for name, M in ws.matroids(MINOR_CAP):
        if M.size < 2:
            continue
        for _ in range(3):
            C = [e for e in M.ground if rng.entry(3) == 0]
            D = [e for e in M.ground if e not in C and rng.entry(3) == 0]
            N = M.minor(C, D)
            spec = has_minor(M, N)
            res.expect(spec is not None and spec.apply(M) == N, _fmt(name, "C", C, "D", D))
    W2 = relax(wheel(2), wheel_rim(2))
    res.expect(W2 == uniform(2, 4), "relaxed rim of W_2 is not U(2,4)")
    return res


def check_loop_coloop_repair(ws: Workspace) -> CheckResult:
    """A connected M has a loop/coloop-free minor N' with N <= N' and
    |E(N')| <= |E(N)| + (loops and coloops of N)."""
    res = CheckResult("loop-coloop-repair")
    for name, M in ws.matroids(MINOR_CAP):
        if M.size < 2 or not is_connected(M):
            continue
        for size in (1, 2, 3):
            for R in itertools.combinations(M.ground, size):
                if len(R) >= M.size:
                    continue
                for c in range(len(R) + 1):
                    for C in itertools.combinations(R, c):
                        spec = MinorSpec(frozenset(C), frozenset(R) - set(C))
                        N = spec.apply(M)
                        l = sum(
                            1 for i in range(N.size)
                            if N.rank_mask(1 << i) == 0 or N.corank_mask(1 << i) == 0
                        )
                        if l == 0:
                            continue
                        out = remove_loops_coloops_minor(M, spec)
                        Np = out.apply(M)
                        res.expect(
                            is_loopless_coloopless(Np)
                            and Np.size <= N.size + l
                            and has_minor(Np, N) is not None,
                            _fmt(name, "C", sorted(C), "D", sorted(spec.delete)),
                        )
    return res


# -- connectivity ---------------------------------------------------------------

def check_connectivity_properties(ws: Workspace) -> CheckResult:
    res = CheckResult("connectivity-properties")
    for name, M in ws.matroids(SUBSET_CAP):
        n = M.size
        t = M.table.astype(np.int64)
        d = M.dual().table.astype(np.int64)
        pop = popcount_table(n).astype(np.int64)
        lam = lambda_table(M).astype(np.int64)
        idx = index_table(n)
        res.expect(bool((lam == t + d - pop).all()), _fmt(name, "rank plus corank form"))
        res.expect(bool((lam == lam[::-1]).all()), _fmt(name, "complement symmetry"))
        res.expect(bool((lam == lambda_table(M.dual())).all()), _fmt(name, "dual symmetry"))
        for i in range(n):
            keep = [j for j in range(n) if j != i]
            lam_del = lambda_table(M.delete([M.ground[i]])).astype(np.int64)
            big = lam[deposit_table(keep)]
            res.expect(
                bool(((lam_del <= big) & (big <= lam_del + 1)).all()),
                _fmt(name, "deletion bound", M.ground[i]),
            )
        bad = 0
        for X in range(1 << n):
            if ((lam[X] + lam) < (lam[X & idx] + lam[X | idx])).any():
                bad += 1
        res.expect(bad == 0, _fmt(name, "submodularity", bad))
    return res


def _separating(M: Matroid, k: int) -> np.ndarray:
    return np.nonzero(lambda_table(M) < k)[0].astype(np.int64)


def check_uncrossing(ws: Workspace) -> CheckResult:
    res = CheckResult("uncrossing")
    for name, M in ws.matroids(SUBSET_CAP):
        n = M.size
        lam = lambda_table(M)
        pop = popcount_table(n)
        full = M.full_mask
        for k in (1, 2, 3):
            if not is_k_connected(M, k):
                continue
            S = _separating(M, k)
            bad = 0
            for X1 in S:
                inter = X1 & S
                union = X1 | S
                c1 = pop[inter] >= k - 1
                c2 = pop[full ^ union] >= k - 1
                bad += int((c1 & (lam[union] >= k)).sum() + (c2 & (lam[inter] >= k)).sum())
            res.expect(bad == 0, _fmt(name, "k", k, "bad pairs", bad))
    return res


def _both_sides(M: Matroid, k: int, exact: bool = False) -> Iterator[tuple[frozenset, frozenset]]:
    E = frozenset(M.ground)
    for sep in k_separations(M, k, exact=exact):
        yield sep.side, E - sep.side
        yield E - sep.side, sep.side


def check_guts_coguts(ws: Workspace) -> CheckResult:
    """The three descriptions of a contraction that lowers an exact separation agree."""
    res = CheckResult("guts-coguts")
    for name, M in ws.matroids(SUBSET_CAP):
        for k in (1, 2, 3):
            if not is_k_connected(M, k):
                continue
            for sep in k_separations(M, k, exact=True):
                E = frozenset(M.ground)
                for X in (sep.side, E - sep.side):
                    from .connectivity import Separation
                    s = Separation(X, k, sep.connectivity)
                    for e in sorted(X):
                        if M.rank([e]) == 0:
                            continue
                        try:
                            guts_coguts_classify(M, s, e)
                            res.ok()
                        except LemmaViolation as exc:
                            res.fail(_fmt(name, "k", k, sorted(X), e, exc))
    return res


def check_contract_avoids_closure(ws: Workspace) -> CheckResult:
    """If M and M/e are k-connected and (X, Y) is a k-separation with e in X, then e is not in cl(Y)."""
    res = CheckResult("contract-avoids-closure")
    for name, M in ws.matroids(SUBSET_CAP):
        for k in (2, 3):
            if not is_k_connected(M, k):
                continue
            good = {e for e in M.ground if is_k_connected(M.contract([e]), k)}
            if not good:
                continue
            for X, Y in _both_sides(M, k):
                cl = M.subset(closure_mask(M, M.mask(Y)))
                for e in sorted(X & good):
                    res.expect(e not in cl, _fmt(name, "k", k, sorted(X), e))
    return res


def check_two_element_sides(ws: Workspace) -> CheckResult:
    """In a connected matroid a 2-element side of a 2-separation is a parallel or series pair."""
    res = CheckResult("two-element-sides")
    for name, M in ws.matroids(SUBSET_CAP):
        if not is_connected(M):
            continue
        for X, _ in _both_sides(M, 2):
            if len(X) != 2:
                continue
            m = M.mask(X)
            res.expect(M.rank_mask(m) == 1 or M.corank_mask(m) == 1, _fmt(name, sorted(X)))
    return res


def _two_separation_sides(M: Matroid, max_side: int) -> Iterator[tuple[frozenset, frozenset]]:
    for X, Y in _both_sides(M, 2):
        if len(X) <= max_side:
            yield Y, X


def check_two_separation_routing(ws: Workspace) -> CheckResult:
    """A side B avoiding E(N) can be removed wholesale; elements outside
    cl(A) may be contracted, and outside cl(A) + cl*(A) removed either way."""
    res = CheckResult("two-separation-routing")
    for name, M in ws.matroids(MINOR_CAP):
        for A, B in _two_separation_sides(M, 4):
            contract_safe, both_safe = two_sep_refinements(M, B)
            for c in range(len(B) + 1):
                for C in itertools.combinations(sorted(B), c):
                    N = M.minor(C, B - set(C))
                    try:
                        route_2sep_minor(M, N, B)
                        res.ok()
                    except LemmaViolation:
                        res.fail(_fmt(name, "B", sorted(B), "C", C))
                    for e in sorted(contract_safe):
                        res.expect(
                            has_minor(M.contract([e]), N) is not None,
                            _fmt(name, "contract", e, "B", sorted(B), "C", C),
                        )
                    for e in sorted(both_safe):
                        res.expect(
                            has_minor(M.delete([e]), N) is not None,
                            _fmt(name, "delete", e, "B", sorted(B), "C", C),
                        )
    return res


def check_circuit_splice(ws: Workspace) -> CheckResult:
    res = CheckResult("circuit-splice")
    for name, M in ws.matroids(MINOR_CAP):
        circuits = circuit_masks(M)
        cset = set(circuits)
        for A, B in _both_sides(M, 2):
            a, b = M.mask(A), M.mask(B)
            crossing = [c for c in circuits if c & a and c & b]
            bad = sum(
                1 for c1 in crossing for c2 in crossing if ((c1 & a) | (c2 & b)) not in cset
            )
            res.expect(bad == 0, _fmt(name, sorted(A), "bad", bad))
    return res


def check_one_contact_routing(ws: Workspace) -> CheckResult:
    """With B meeting E(N) in a single element f that is in no series or
    parallel pair, some e in B - f keeps N under deletion and contraction."""
    res = CheckResult("one-contact-routing")
    for name, M in ws.matroids(MINOR_CAP):
        if M.size < 4 or not is_connected(M):
            continue
        for A, B in _two_separation_sides(M, 4):
            for f in sorted(B):
                if _in_series_or_parallel(M, f):
                    continue
                rest = sorted(B - {f})
                for c in range(len(rest) + 1):
                    for C in itertools.combinations(rest, c):
                        N = M.minor(C, set(rest) - set(C))
                        if not is_loopless_coloopless(N):
                            continue
                        try:
                            route_2sep_one_contact(M, N, B)
                            res.ok()
                        except LemmaViolation:
                            res.fail(_fmt(name, "B", sorted(B), "f", f, "C", C))
    return res


def check_bixby(ws: Workspace) -> CheckResult:
    res = CheckResult("bixby")
    for name, M in ws.matroids(SUBSET_CAP):
        if not ws.three_connected(M):
            continue
        for e in M.ground:
            try:
                bixby_branch(M, e)
                res.ok()
            except LemmaViolation:
                res.fail(_fmt(name, e))
    return res


def check_tutte_triangle(ws: Workspace) -> CheckResult:
    res = CheckResult("tutte-triangle")
    for name, M in ws.matroids(SUBSET_CAP):
        if M.size < 4 or not ws.three_connected(M):
            continue
        tris = triangles(M)
        if not tris:
            continue
        tds = triads(M)
        deletable = {e: is_3_connected(M.delete([e])) for e in M.ground}
        for T in tris:
            for e, f in itertools.permutations(sorted(T), 2):
                if deletable[e] or deletable[f]:
                    continue
                (g,) = T - {e, f}
                ok = any(e in S and len(S & {f, g}) == 1 for S in tds)
                res.expect(ok, _fmt(name, sorted(T), e, f))
    return res


def _fully_closed_masks(M: Matroid) -> list[int]:
    out = []
    for X in range(1 << M.size):
        if closure_mask(M, X) == X and coclosure_mask(M, X) == X:
            out.append(X)
    return out


def check_fan_observations(ws: Workspace) -> tuple[CheckResult, CheckResult, CheckResult]:
    """Fans dualise and reverse; maximal fans of a fully closed set are
    maximal; internal elements of long fans are never removable."""
    symmetry = CheckResult("fan-symmetry")
    closed = CheckResult("fan-closed-maximality")
    internal = CheckResult("fan-internal-elements")
    for name, M in ws.matroids(MINOR_CAP):
        tri, tra = _triangle_triad_masks(M)
        if not tri and not tra:
            continue
        Md = M.dual()
        removable = {}
        for seq in iter_fans(M):
            symmetry.expect(is_fan(Md, seq), _fmt(name, "dual", seq))
            symmetry.expect(is_fan(M, seq[::-1]), _fmt(name, "reverse", seq))
            if len(seq) < 4:
                continue
            for x in seq[1:-1]:
                if x not in removable:
                    removable[x] = (
                        is_3_connected(M.delete([x])) or is_3_connected(M.contract([x]))
                    )
                internal.expect(not removable[x], _fmt(name, seq, x))
        maximal = {frozenset(F.elements) for F in find_fans(M)}
        for X in _fully_closed_masks(M):
            for F in find_fans(M, within=M.subset(X)):
                closed.expect(
                    frozenset(F.elements) in maximal,
                    _fmt(name, sorted(M.subset(X)), F.elements),
                )
    return symmetry, closed, internal


def _small_wheelfree(ws: Workspace, cap: int) -> Iterator[tuple[str, Matroid]]:
    for name, M in ws.matroids(min(cap, ISO_CAP)):
        if ws.three_connected(M) and not is_wheel_or_whirl(M):
            yield name, M


def check_fan_ends(ws: Workspace) -> CheckResult:
    """Maximal fans of a 3-connected non-wheel, non-whirl matroid can be
    ordered so that each end has a 3-connected deletion or contraction."""
    res = CheckResult("fan-ends")
    for name, M in _small_wheelfree(ws, SUBSET_CAP):
        good = {}

        def works(x):
            if x not in good:
                good[x] = is_3_connected(M.delete([x])) or is_3_connected(M.contract([x]))
            return good[x]

        for F in find_fans(M):
            orders = [s for s in iter_fans(M, within=F.elements) if len(s) == len(F)]
            res.expect(
                any(works(s[0]) and works(s[-1]) for s in orders),
                _fmt(name, F.elements),
            )
    return res


def _minors_on(M: Matroid, keep: Iterable[int]) -> Iterator[MinorSpec]:
    keep = set(keep)
    rest = [e for e in M.ground if e not in keep]
    seen = set()
    for c in range(len(rest) + 1):
        for C in itertools.combinations(rest, c):
            if M.rank(C) != len(C):
                continue
            spec = MinorSpec(frozenset(C), frozenset(rest) - set(C))
            N = spec.apply(M)
            key = N.table.tobytes()
            if key in seen:
                continue
            seen.add(key)
            yield spec


def check_fan_end_minor(ws: Workspace) -> CheckResult:
    """An end of a maximal fan of length >= 4 meeting E(N) at most once can
    be removed keeping 3-connectivity and N."""
    res = CheckResult("fan-end-minor")
    for name, M in _small_wheelfree(ws, SUBSET_CAP):
        for F in find_fans(M):
            if len(F) < 4:
                continue
            outside = [e for e in M.ground if e not in F.elements]
            for extra in [()] + [(x,) for x in F.elements]:
                for spec in _minors_on(M, outside + list(extra)):
                    N = spec.apply(M)
                    if not is_loopless_coloopless(N):
                        continue
                    try:
                        fan_end_removal(M, N, F)
                        res.ok()
                    except LemmaViolation:
                        res.fail(_fmt(name, F.elements, spec.to_dict()))
    return res


# -- tangles --------------------------------------------------------------------

def check_width_duality(ws: Workspace) -> CheckResult:
    """Largest tangle order equals optimal decomposition width."""
    res = CheckResult("width-duality")
    for name, M in ws.matroids(min(DECOMPOSITION_CAP, TANGLE_CAP)):
        bw = branch_width(M)
        width, tree = branch_width_by_decomposition(M)
        res.expect(
            bw == width and decomposition_width(M, tree) == width,
            _fmt(name, "tangle", bw, "decomposition", width),
        )
    return res


def check_tangle_basics(ws: Workspace) -> CheckResult:
    """Downward closure, truncation, duality, and union closure of tangles."""
    res = CheckResult("tangle-basics")
    for name, M in ws.tangle_matroids():
        lam = lambda_table(M)
        n = M.size
        idx = index_table(n)
        for T in ws.tangles(M):
            member = np.zeros(1 << n, dtype=bool)
            ms = np.fromiter(T.masks, dtype=np.int64) if T.masks else np.zeros(0, dtype=np.int64)
            member[ms] = True
            low = lam < T.order
            bad = 0
            for X in ms:
                subs = idx[(idx & ~X) == 0]
                bad += int((low[subs] & ~member[subs]).sum())
            res.expect(bad == 0, _fmt(name, "downward closure", T.order, bad))
            for theta in range(T.order):
                res.expect(
                    _validate_masks(M, truncate(T, theta).masks, theta).valid,
                    _fmt(name, "truncation", T.order, theta),
                )
            res.expect(_validate_masks(M.dual(), T.masks, T.order).valid, _fmt(name, "dual", T.order))
            bad = 0
            for X in ms:
                U = X | ms
                bad += int((low[U] & ~member[U]).sum())
            res.expect(bad == 0, _fmt(name, "union", T.order, bad))
    return res


def check_tangle_matroid(ws: Workspace) -> CheckResult:
    """The tangle rank function is normalised, bounded, unit-increasing and submodular."""
    res = CheckResult("tangle-matroid")
    for name, M in ws.tangle_matroids():
        n = M.size
        idx = index_table(n)
        pop = popcount_table(n)
        for T in ws.tangles(M):
            rho = tangle_rank_table(T).astype(np.int64)
            ok = rho[0] == 0 and bool((rho <= pop).all())
            for i in range(n):
                up = rho[idx | (1 << i)]
                ok = ok and bool(((up >= rho) & (up <= rho + 1)).all())
            bad = 0
            for X in range(1 << n):
                if ((rho[X] + rho) < (rho[X & idx] + rho[X | idx])).any():
                    bad += 1
            res.expect(ok and bad == 0, _fmt(name, "order", T.order, "submodular failures", bad))
    return res


def check_tangle_independence(ws: Workspace) -> CheckResult:
    """Tangle-independent sets are independent and coindependent."""
    res = CheckResult("tangle-independence")
    for name, M in ws.tangle_matroids():
        pop = popcount_table(M.size)
        t = M.table
        d = M.dual().table
        for T in ws.tangles(M):
            rho = tangle_rank_table(T)
            ind = rho == pop
            res.expect(bool(((t == pop) & (d == pop))[ind].all()), _fmt(name, "order", T.order))
    return res


def _single_minors(M: Matroid) -> Iterator[tuple[int, str, Matroid]]:
    for e in M.ground:
        yield e, DELETE, M.delete([e])
        yield e, CONTRACT, M.contract([e])


def check_inherited_tangles(ws: Workspace) -> CheckResult:
    """Inherited tangles are tangles, their ranks drop by at most one, and
    stay put off the tangle closure; independence survives removal."""
    res = CheckResult("inherited-tangles")
    for name, M in ws.tangle_matroids():
        n = M.size
        pop = popcount_table(n)
        for T in ws.tangles(M):
            rho = tangle_rank_table(T).astype(np.int64)
            MT = tangle_matroid(T)
            for i, e in enumerate(M.ground):
                keep = [j for j in range(n) if j != i]
                dep = deposit_table(keep)
                for op in (DELETE, CONTRACT):
                    try:
                        Tp = inherit_tangle(T, {e: op})
                    except LemmaViolation:
                        res.fail(_fmt(name, "inherit", T.order, e, op))
                        continue
                    res.ok()
                    rp = tangle_rank_table(Tp).astype(np.int64)
                    big = rho[dep]
                    res.expect(
                        bool(((big - 1 <= rp) & (rp <= big)).all()),
                        _fmt(name, "rank bounds", T.order, e, op),
                    )
                    bad = 0
                    for z, Z in enumerate(dep):
                        Z = int(Z)
                        if closure_mask(MT, Z) >> i & 1 or rho[Z] >= T.order:
                            continue
                        if rp[z] != rho[Z]:
                            bad += 1
                    res.expect(bad == 0, _fmt(name, "rank equality", T.order, e, op, bad))
                    # independent sets through e lose e and stay independent
                    small = popcount_table(n - 1)
                    through = dep | (1 << i)
                    indep = rho[through] == pop[through]
                    res.expect(
                        bool((rp[indep] == small[indep]).all()),
                        _fmt(name, "independence", T.order, e, op),
                    )
    return res


def check_tangle_closure(ws: Workspace) -> CheckResult:
    """Elements added by the tangle closure of an independent set lie in
    the closure or coclosure of the rest."""
    res = CheckResult("tangle-closure")
    for name, M in ws.tangle_matroids():
        pop = popcount_table(M.size)
        for T in ws.tangles(M):
            MT = tangle_matroid(T)
            rho = MT.table
            seen = set()
            for X in np.nonzero(rho == pop)[0]:
                Y = closure_mask(MT, int(X))
                if (int(X), Y) in seen:
                    continue
                seen.add((int(X), Y))
                for i in bits_of(Y & ~int(X)):
                    rest = Y & ~(1 << i)
                    ok = bool(closure_mask(M, rest) >> i & 1) or bool(coclosure_mask(M, rest) >> i & 1)
                    res.expect(ok, _fmt(name, T.order, sorted(M.subset(int(X))), M.ground[i]))
    return res


def check_skew_lines(ws: Workspace) -> CheckResult:
    """Removing an element of one long line keeps a skew long line closed."""
    res = CheckResult("skew-lines")
    for name, M, T in ws.line_tangles:
        lines = long_lines(T)
        MT = tangle_matroid(T)
        for X, Xp in itertools.permutations(lines, 2):
            if MT.rank(X | Xp) != 4:
                continue
            for e in sorted(X):
                for op in (DELETE, CONTRACT):
                    if not is_3_connected(remove(M, [e], op)):
                        continue
                    MTp = tangle_matroid(inherit_tangle(T, {e: op}))
                    xm = MTp.mask(Xp)
                    res.expect(closure_mask(MTp, xm) == xm, _fmt(name, sorted(X), sorted(Xp), e, op))
    return res


# -- restoration and removal --------------------------------------------------

def restoration_instances(ws: Workspace, max_size: int = 6) -> Iterator[tuple[str, Matroid, Tangle, frozenset, frozenset]]:
    """(M, T, C, D) with M 3-connected, C + D tangle-independent and
    M / C \\ D 3-connected, over all tangles of the small corpus."""
    for name, M in ws.tangle_matroids():
        if not ws.three_connected(M):
            continue
        pop = popcount_table(M.size)
        for T in ws.tangles(M):
            rho = tangle_rank_table(T)
            for S in np.nonzero(rho == pop)[0]:
                S = int(S)
                if popcount(S) == 0 or popcount(S) > max_size:
                    continue
                labels = M.labels_of(S)
                for c in range(len(labels) + 1):
                    for C in itertools.combinations(labels, c):
                        D = frozenset(labels) - set(C)
                        if is_3_connected(M.minor(C, D)):
                            yield name, M, T, frozenset(C), D


def check_restoration(ws: Workspace) -> tuple[CheckResult, CheckResult, CheckResult]:
    """Compensating restorations exist, graphs have no isolated
    non-privileged vertex, and restorability matches direct testing."""
    comp = CheckResult("compensating-restoration")
    iso = CheckResult("restoration-isolation")
    equiv = CheckResult("restorable-equivalence")
    for name, M, T, C, D in restoration_instances(ws):
        try:
            G = restoration_graph(M, T, C, D)
            iso.ok()
        except LemmaViolation as exc:
            iso.fail(_fmt(name, sorted(C), sorted(D), exc))
            continue
        for d in sorted(D):
            ok = is_3_connected(restore(M, C, D, {d})) or any(
                is_3_connected(restore(M, C, D, {c, d})) for c in sorted(C)
            )
            comp.expect(ok, _fmt(name, sorted(C), sorted(D), d))
        verts = sorted(C | D)
        bad = 0
        for r in range(len(verts) + 1):
            for S in itertools.combinations(verts, r):
                if restorable(G, S) != is_3_connected(restore(M, C, D, S)):
                    bad += 1
        equiv.expect(bad == 0, _fmt(name, sorted(C), sorted(D), "disagreements", bad))
        if bad:
            equiv.violations += bad - 1
    return comp, iso, equiv


def check_delete_contract_fan(ws: Workspace) -> tuple[CheckResult, CheckResult]:
    """For a tangle-independent pair {c, d} with M/c\\d 3-connected, M/c not,
    and d in no parallel pair: M is 3-connected, and M\\d is 3-connected or
    c and d are internal elements of a fan of length at least four."""
    conn = CheckResult("delete-contract-connectivity")
    fan = CheckResult("delete-contract-fan")
    for name, M in ws.tangle_matroids():
        parallel_members = set()
        for i, j in itertools.combinations(range(M.size), 2):
            m = (1 << i) | (1 << j)
            if M.rank_mask(m) == 1 and M.rank_mask(1 << i) == 1 and M.rank_mask(1 << j) == 1:
                parallel_members |= {M.ground[i], M.ground[j]}
        fans = None
        for T in ws.tangles(M):
            rho = tangle_rank_table(T)
            for c, d in itertools.permutations(M.ground, 2):
                if rho[M.mask([c, d])] != 2 or d in parallel_members:
                    continue
                if not is_3_connected(M.minor([c], [d])) or is_3_connected(M.contract([c])):
                    continue
                conn.expect(ws.three_connected(M), _fmt(name, "order", T.order, "c", c, "d", d))
                if not ws.three_connected(M):
                    # the fan alternative is argued from 3-connectivity of M
                    continue
                if is_3_connected(M.delete([d])):
                    fan.ok()
                    continue
                if fans is None:
                    fans = [s for s in iter_fans(M) if len(s) >= 4]
                fan.expect(
                    any(c in s[1:-1] and d in s[1:-1] for s in fans),
                    _fmt(name, "order", T.order, "c", c, "d", d),
                )
    return conn, fan


def check_line_removal(ws: Workspace) -> CheckResult:
    """Some element of a long line minus f is removable keeping N, when the
    line minus f avoids E(N).  N ranges over loop- and coloop-free minors on
    E(M) minus (X - f), and on that set minus one more element."""
    res = CheckResult("line-removal")
    for name, M, T in ws.line_tangles:
        for X in long_lines(T):
            for f in sorted(X):
                base = [e for e in M.ground if e not in X or e == f]
                seen = set()
                for drop in [None] + base:
                    keep = [e for e in base if e != drop]
                    for spec in _minors_on(M, keep):
                        N = spec.apply(M)
                        key = (N.ground, N.table.tobytes())
                        if key in seen or not is_loopless_coloopless(N):
                            continue
                        seen.add(key)
                        try:
                            e, op, _ = remove_on_line(M, T, N, X, f)
                            res.expect(
                                e in X and e != f and three_connected_with_minor(remove(M, [e], op), N),
                                _fmt(name, sorted(X), f, "bad answer", e, op),
                            )
                        except LemmaViolation:
                            res.fail(_fmt(name, sorted(X), f, spec.to_dict()))
    return res


def removal_instances(ws: Workspace, count: int = 120, max_n: int = 10) -> list[tuple[str, Matroid, Tangle, MinorSpec, int]]:
    """Seeded (M, T, N, k) instances: M 3-connected, T a tangle of maximum
    order, N a loop/coloop-free minor on a small label set."""
    rng = LCG(ws.seed + 7919)
    pool = []
    for e in corpus(ws.seed, min(max_n, TANGLE_CAP)):
        M = e.matroid
        if M.size >= 5 and is_3_connected(M):
            pool.append((e.name, M))
    out = []
    tangles: dict[int, Tangle] = {}
    attempts = 0
    while len(out) < count and attempts < 50 * count and pool:
        attempts += 1
        name, M = pool[rng.next() % len(pool)]
        if id(M) not in tangles:
            bw = branch_width(M)
            tangles[id(M)] = enumerate_tangles(M, bw, limit=1)[0]
        T = tangles[id(M)]
        size = 2 + rng.next() % 3
        keep = sorted(M.ground[i] for i in _sample(rng, M.size, size))
        specs = [s for s in _minors_on(M, keep) if is_loopless_coloopless(s.apply(M))]
        if not specs:
            continue
        spec = specs[rng.next() % len(specs)]
        k = 1 + rng.next() % 2
        out.append((name, M, T, spec, k))
    return out


def _sample(rng: LCG, n: int, k: int) -> list[int]:
    items = list(range(n))
    for i in range(k):
        j = i + rng.next() % (n - i)
        items[i], items[j] = items[j], items[i]
    return items[:k]


def check_removal_soundness(ws: Workspace, count: int = 120) -> tuple[CheckResult, CheckResult]:
    sound = CheckResult("removal-soundness")
    dominance = CheckResult("oracle-dominance")
    for name, M, T, spec, k in removal_instances(ws, count):
        ctx = RemovalContext(M, T, spec, k)
        try:
            result = find_removal_set(ctx)
        except LemmaViolation as exc:
            sound.fail(_fmt(name, spec.to_dict(), k, exc))
            continue
        if not result.found:
            sound.ok()
            continue
        sound.expect(
            verify_removal(M, T, ctx.N, result.removed, result.operation, k),
            _fmt(name, spec.to_dict(), k, sorted(result.removed), result.operation),
        )
        dominance.expect(
            brute_force_oracle(M, ctx.N, k) is not None,
            _fmt(name, spec.to_dict(), k),
        )
    return sound, dominance


def check_growth(ws: Workspace) -> CheckResult:
    """Grown sets satisfy every invariant, and reach the target when the
    tangle order is large enough."""
    res = CheckResult("growth")
    for name, M, T, spec, k in removal_instances(ws, 40):
        N = spec.apply(M)
        t = int(tangle_rank_table(T)[M.mask(N.ground)])
        s = max(10 * k - 7, k)
        try:
            got = grow_removal_set(M, T, N, s)
        except LemmaViolation as exc:
            res.fail(_fmt(name, spec.to_dict(), exc))
            continue
        C, D = got.contract, got.delete
        rho = tangle_rank_table(T)
        ok = (
            not (C | D) & set(N.ground)
            and three_connected_with_minor(M.minor(C, D), N)
            and int(rho[M.mask(set(N.ground) | C | D)]) == t + len(C | D)
        )
        if growth_hypothesis_met(T, t, s):
            ok = ok and len(C | D) >= s
        res.expect(ok, _fmt(name, spec.to_dict(), got.to_dict()))
    return res


def splitter_instances(ws: Workspace, max_n: Optional[int] = None, max_removed: Optional[int] = None):
    """(M, N) with M 3-connected of branch width >= 3 and N a 3-connected
    proper minor on M's labels."""
    cap = min(ws.max_n if max_n is None else max_n, ISO_CAP)
    for name, M in ws.matroids(cap):
        if not ws.three_connected(M) or branch_width(M) < 3:
            continue
        seen = set()
        limit = M.size if max_removed is None else max_removed
        for r in range(1, limit + 1):
            for R in itertools.combinations(M.ground, r):
                for c in range(r + 1):
                    for C in itertools.combinations(R, c):
                        if M.rank(C) != len(C):
                            continue
                        D = frozenset(R) - set(C)
                        N = M.minor(C, D)
                        key = (N.ground, N.table.tobytes())
                        if key in seen:
                            continue
                        seen.add(key)
                        if is_3_connected(N):
                            yield name, M, N


def check_splitter(ws: Workspace, max_n: Optional[int] = None, max_removed: Optional[int] = None) -> CheckResult:
    res = CheckResult("splitter")
    for name, M, N in splitter_instances(ws, max_n, max_removed):
        w = splitter_check(M, N, require_branch_width=False)
        if w is None:
            res.fail(_fmt(name, sorted(N.ground)))
            continue
        minor = remove(M, [w.element], w.operation)
        if w.variant == "exact":
            res.expect(three_connected_with_minor(minor, N), _fmt(name, "bad witness", w))
        else:
            res.expect(is_3_connected(minor), _fmt(name, "bad witness", w))
    return res


# -- suite runner ---------------------------------------------------------------

def _core(ws):
    return [check_rank_axioms(ws), check_closure_complement(ws), check_minor_round_trip(ws),
            check_loop_coloop_repair(ws)]


def _connectivity(ws):
    return [
        check_connectivity_properties(ws),
        check_uncrossing(ws),
        check_guts_coguts(ws),
        check_contract_avoids_closure(ws),
        check_two_element_sides(ws),
        check_two_separation_routing(ws),
        check_circuit_splice(ws),
        check_one_contact_routing(ws),
        check_bixby(ws),
        check_tutte_triangle(ws),
        *check_fan_observations(ws),
        check_fan_ends(ws),
        check_fan_end_minor(ws),
    ]


def _tangle(ws):
    return [
        check_width_duality(ws),
        check_tangle_basics(ws),
        check_tangle_matroid(ws),
        check_tangle_independence(ws),
        check_inherited_tangles(ws),
        check_tangle_closure(ws),
        check_skew_lines(ws),
    ]


def _removal(ws):
    comp, iso, equiv = check_restoration(ws)
    sound, dom = check_removal_soundness(ws)
    return [
        *check_delete_contract_fan(ws),
        comp,
        iso,
        equiv,
        check_line_removal(ws),
        check_growth(ws),
        sound,
        dom,
        check_splitter(ws),
    ]


RUNNERS = {"core": _core, "connectivity": _connectivity, "tangle": _tangle, "removal": _removal}


def run_suite(suite: str = "all", seed: int = 1, max_n: int = 8,
              progress: Optional[Callable[[str], None]] = None) -> dict:
    """Run one suite (or ``"all"``) and return a JSON-ready report."""
    names = SUITES if suite == "all" else (suite,)
    for s in names:
        if s not in RUNNERS:
            raise MatroidError(f"unknown suite {s!r}")
    ws = Workspace(seed, max_n)
    checks: dict = {}
    for s in names:
        for result in RUNNERS[s](ws):
            checks[result.name] = dict(result.to_dict(), suite=s)
            if progress:
                progress(f"{s}/{result.name}: {result.checked} checked, {result.violations} violations")
    return {
        "suite": suite,
        "seed": seed,
        "max_n": max_n,
        "corpus": {"size": len(ws.entries), "digest": ws.digest()},
        "checks": checks,
        "passed": all(c["passed"] for c in checks.values()),
    }


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
