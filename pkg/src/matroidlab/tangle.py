"""Tangles of matroids, the tangle matroid, and branch width.

A tangle of order theta is stored extensionally as the set of bitmasks of
its members.  Enumeration picks one side of every complementary pair of
sets with connectivity below theta, propagating the "no three members cover
E" axiom as it goes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

import numpy as np

from .bits import index_table, lex_key, popcount, subset_any, superset_min
from .connectivity import CONTRACT, DELETE, lambda_table
from .core import Matroid, closure_mask, from_table
from .errors import GroundSetTooLarge, LemmaViolation, MatroidError

TANGLE_CAP = 12


@dataclass(frozen=True)
class Tangle:
    host: Matroid = field(compare=False)
    order: int
    masks: frozenset

    @property
    def members(self) -> list[frozenset]:
        return [self.host.subset(m) for m in sorted(self.masks, key=lex_key)]

    def __contains__(self, X) -> bool:
        return self.host.mask(X) in self.masks

    def __len__(self) -> int:
        return len(self.masks)

    def sorted_masks(self) -> list[int]:
        return sorted(self.masks, key=lex_key)

    def to_dict(self) -> dict:
        return {"order": self.order, "members": [sorted(s) for s in self.members]}


def _check_size(M: Matroid) -> None:
    if M.size > TANGLE_CAP:
        raise GroundSetTooLarge(f"tangle search limited to {TANGLE_CAP} elements")


class TangleCheck(NamedTuple):
    valid: bool
    axiom: Optional[int]
    violated: tuple = ()
    witness: tuple = ()


def _validate_masks(M: Matroid, masks: Iterable[int], theta: int) -> TangleCheck:
    n = M.size
    full = M.full_mask
    masks = sorted(set(masks), key=lex_key)
    lam = lambda_table(M)
    violated = []
    witness = []

    bad = [X for X in masks if lam[X] >= theta]
    if bad:
        violated.append(1)
        witness.append((M.subset(bad[0]),))

    member = np.zeros(1 << n, dtype=bool)
    member[masks] = True
    low = np.nonzero(lam < theta)[0]
    missing = low[~member[low] & ~member[full ^ low]]
    if missing.size:
        violated.append(2)
        witness.append((M.subset(int(missing[0])),))

    below = subset_any(member, n)
    arr = np.array(masks, dtype=np.int64)
    for X in masks:
        hit = below[full ^ (X | arr)]
        if hit.any():
            Y = int(arr[int(np.argmax(hit))])
            Z = next(m for m in masks if (full ^ (X | Y)) & ~m == 0)
            violated.append(3)
            witness.append((M.subset(X), M.subset(Y), M.subset(Z)))
            break

    for i in range(n):
        if member[full ^ (1 << i)]:
            violated.append(4)
            witness.append((M.subset(full ^ (1 << i)),))
            break

    if not violated:
        return TangleCheck(True, None)
    return TangleCheck(False, violated[0], tuple(violated), witness[0])


def validate_tangle(M: Matroid, family: Iterable[Iterable[int]], theta: int) -> TangleCheck:
    """Check the four tangle axioms; report the first one that fails."""
    return _validate_masks(M, [M.mask(X) for X in family], theta)


class _Search:
    """Backtracking over complementary pairs with axiom-3 propagation."""

    def __init__(self, M: Matroid, theta: int):
        self.M = M
        self.n = n = M.size
        self.full = full = M.full_mask
        self.theta = theta
        lam = lambda_table(M)
        self.idx = index_table(n)
        low = [int(m) for m in np.nonzero(lam < theta)[0]]
        pairs = []
        for X in low:
            Y = full ^ X
            if X < Y:
                a, b = sorted((X, Y), key=lex_key)
                pairs.append((int(lam[X]), lex_key(a), a, b))
        pairs.sort()
        self.pairs = [(a, b) for _, _, a, b in pairs]

    def initial_blocked(self) -> np.ndarray:
        blocked = np.zeros(1 << self.n, dtype=bool)
        blocked[self.full] = True
        for i in range(self.n):
            blocked[self.full ^ (1 << i)] = True
        return blocked

    def add(self, X: int, members: list, blocked: np.ndarray, below: np.ndarray) -> bool:
        """Make X a member; False when this breaks axiom 3."""
        if blocked[X]:
            return False
        if below[X]:
            # X is inside an existing member: every cover it completes is
            # already blocked by that member
            members.append(X)
            return True
        members.append(X)
        idx = self.idx
        for Y in members:
            c = self.full ^ (X | Y)
            blocked |= (idx & c) == c
        below |= (idx & X) == idx
        for Y in members:
            if blocked[Y]:
                return False
        return True

    def run(self, limit: Optional[int] = None) -> list[frozenset]:
        results: list[frozenset] = []
        npairs = len(self.pairs)
        pa = np.array([p[0] for p in self.pairs], dtype=np.int64)
        pb = np.array([p[1] for p in self.pairs], dtype=np.int64)

        def propagate(decided: np.ndarray, members: list, blocked, below) -> bool:
            while True:
                open_ = ~decided
                if not open_.any():
                    return True
                ba = blocked[pa] & open_
                bb = blocked[pb] & open_
                if (ba & bb).any():
                    return False
                forced = np.nonzero(ba | bb)[0]
                if forced.size == 0:
                    return True
                for i in forced:
                    if decided[i]:
                        continue
                    choice = int(pb[i]) if blocked[pa[i]] else int(pa[i])
                    decided[i] = True
                    if blocked[choice]:
                        return False
                    if not self.add(choice, members, blocked, below):
                        return False

        def recurse(decided, members, blocked, below):
            if limit is not None and len(results) >= limit:
                return
            if not propagate(decided, members, blocked, below):
                return
            open_idx = np.nonzero(~decided)[0]
            if open_idx.size == 0:
                results.append(frozenset(members))
                return
            i = int(open_idx[0])
            for choice in (int(pa[i]), int(pb[i])):
                d2 = decided.copy()
                d2[i] = True
                m2 = list(members)
                b2 = blocked.copy()
                w2 = below.copy()
                if self.add(choice, m2, b2, w2):
                    recurse(d2, m2, b2, w2)

        if npairs == 0:
            return [frozenset()]
        recurse(
            np.zeros(npairs, dtype=bool),
            [],
            self.initial_blocked(),
            np.zeros(1 << self.n, dtype=bool),
        )
        return results


def enumerate_tangles(M: Matroid, theta: int, limit: Optional[int] = None) -> list[Tangle]:
    """All tangles of order exactly ``theta``, in a deterministic order."""
    _check_size(M)
    if theta < 0:
        raise MatroidError("tangle order must be non-negative")
    if M.size == 0:
        return []
    found = _Search(M, theta).run(limit)
    tangles = [Tangle(M, theta, fam) for fam in found]
    for T in tangles:
        check = _validate_masks(M, T.masks, theta)
        if not check.valid:
            raise LemmaViolation(f"enumerated family violates axiom {check.axiom}")
    return sorted(tangles, key=lambda T: [lex_key(m) for m in T.sorted_masks()])


def has_tangle(M: Matroid, theta: int) -> bool:
    return bool(enumerate_tangles(M, theta, limit=1))


def max_tangle(M: Matroid) -> Tangle:
    """A tangle of maximum order (the first one enumerated)."""
    bw = branch_width(M)
    if bw == 0:
        return Tangle(M, 0, frozenset())
    return enumerate_tangles(M, bw, limit=1)[0]


def branch_width(M: Matroid) -> int:
    """Maximum order of a tangle of M (0 when only the empty tangle exists)."""
    _check_size(M)
    theta = 0
    while has_tangle(M, theta + 1):
        theta += 1
    return theta


# -- tangle matroid ---------------------------------------------------------

def tangle_rank_table(T: Tangle) -> np.ndarray:
    M = T.host
    lam = lambda_table(M)
    vals = np.full(1 << M.size, T.order, dtype=np.int16)
    if T.masks:
        ms = np.fromiter(T.masks, dtype=np.int64)
        vals[ms] = lam[ms]
    return superset_min(vals, M.size)


def tangle_matroid(T: Tangle) -> Matroid:
    """M(T): rank of X is the least connectivity of a member containing X,
    or the order when no member contains X."""
    return from_table(T.host.ground, tangle_rank_table(T), name="tangle matroid")


def tangle_rank(T: Tangle, X: Iterable[int]) -> int:
    M = T.host
    x = M.mask(X)
    lam = lambda_table(M)
    best = T.order
    for Y in T.masks:
        if x & ~Y == 0:
            best = min(best, int(lam[Y]))
    return best


def tangle_closure(T: Tangle, X: Iterable[int]) -> frozenset:
    MT = tangle_matroid(T)
    return MT.subset(closure_mask(MT, MT.mask(X)))


def tangle_independent(T: Tangle, X: Iterable[int]) -> bool:
    X = list(X)
    return tangle_rank(T, X) == len(set(X))


def long_lines(T: Tangle) -> list[frozenset]:
    """Closed sets of rank two in M(T) with at least three elements."""
    MT = tangle_matroid(T)
    seen = set()
    n = MT.size
    for i in range(n):
        for j in range(i + 1, n):
            m = (1 << i) | (1 << j)
            if MT.rank_mask(m) != 2:
                continue
            cl = closure_mask(MT, m)
            if popcount(cl) >= 3:
                seen.add(cl)
    return [MT.subset(m) for m in sorted(seen, key=lex_key)]


# -- inherited tangles ------------------------------------------------------

def _inherit_one(T: Tangle, e: int, op: str) -> Tangle:
    M = T.host
    minor = M.delete([e]) if op == DELETE else M.contract([e])
    theta = T.order - 1
    lam = lambda_table(minor)
    masks = set()
    for X in T.masks:
        labels = [x for x in M.labels_of(X) if x != e]
        m = minor.mask(labels)
        if lam[m] < theta:
            masks.add(m)
    return Tangle(minor, theta, frozenset(masks))


def inherit_tangle(T: Tangle, removals: dict) -> Tangle:
    """The tangle of a minor inherited from T.

    ``removals`` maps each removed element to ``"delete"`` or ``"contract"``;
    elements are processed one at a time in label order and every
    intermediate family is checked against the tangle axioms.
    """
    if T.order - len(removals) < 0:
        raise MatroidError("cannot remove more elements than the tangle order")
    for e in removals:
        T.host.position(e)
    cur = T
    for e in sorted(removals):
        op = removals[e]
        if op not in (DELETE, CONTRACT):
            raise MatroidError(f"unknown operation {op!r}")
        cur = _inherit_one(cur, e, op)
        check = _validate_masks(cur.host, cur.masks, cur.order)
        if not check.valid:
            raise LemmaViolation(f"inherited family violates axiom {check.axiom}")
    return cur


def removal_tags(contract: Iterable[int] = (), delete: Iterable[int] = ()) -> dict:
    tags = {c: CONTRACT for c in contract}
    for d in delete:
        if d in tags:
            raise MatroidError(f"{d} both contracted and deleted")
        tags[d] = DELETE
    return tags


def truncate(T: Tangle, theta: int) -> Tangle:
    """Members of T with connectivity below a smaller order."""
    lam = lambda_table(T.host)
    return Tangle(T.host, theta, frozenset(m for m in T.masks if lam[m] < theta))


def as_dual_tangle(T: Tangle) -> Tangle:
    return Tangle(T.host.dual(), T.order, T.masks)
