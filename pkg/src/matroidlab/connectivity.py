"""Connectivity function, separations, 3-connectivity and fans.

Everything here is exhaustive over subsets of the ground set, which is fine
up to the rank-table cap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np

from .bits import bits_of, popcount, popcount_table
from .core import (
    Matroid,
    MinorSpec,
    as_minor,
    closure_mask,
    coclosure_mask,
    cosimplify,
    has_minor,
    is_connected,
    is_loopless_coloopless,
    parallel_classes,
    series_classes,
    simplify,
    wheel,
    whirl,
)
from .errors import LemmaViolation, MatroidError
from .isomorphism import ISO_CAP, is_isomorphic

DELETE = "delete"
CONTRACT = "contract"


def lambda_table(M: Matroid) -> np.ndarray:
    """lambda_M(X) for every local mask X."""
    t = M.table
    return t + t[::-1] - t[-1]


def connectivity_mask(M: Matroid, mask: int) -> int:
    return M.rank_mask(mask) + M.rank_mask(M.full_mask ^ mask) - M.full_rank


def connectivity(M: Matroid, X: Iterable[int]) -> int:
    """The connectivity function r(X) + r(E - X) - r(M)."""
    return connectivity_mask(M, M.mask(X))


@dataclass(frozen=True)
class Separation:
    """A partition (side, E - side) with lambda(side) < order."""

    side: frozenset
    order: int
    connectivity: int

    @property
    def exact(self) -> bool:
        return self.connectivity == self.order - 1

    def other_side(self, M: Matroid) -> frozenset:
        return frozenset(M.ground) - self.side


def k_separations(M: Matroid, k: int, exact: bool = False) -> list[Separation]:
    """All k-separations, one per partition, reported by the side holding the
    least element."""
    if k < 1:
        raise MatroidError("k must be at least 1")
    n = M.size
    if n == 0:
        return []
    lam = lambda_table(M)
    pop = popcount_table(n)
    ok = (lam < k) & (pop >= k) & (n - pop >= k)
    if exact:
        ok &= lam == k - 1
    ok[np.arange(1 << n) & 1 == 0] = False
    out = []
    for m in np.nonzero(ok)[0]:
        m = int(m)
        out.append(Separation(M.subset(m), k, int(lam[m])))
    return sorted(out, key=lambda s: (s.connectivity, tuple(sorted(s.side))))


def is_k_connected(M: Matroid, k: int) -> bool:
    """No k'-separation for any k' < k (read literally, so tiny matroids pass)."""
    n = M.size
    if n == 0 or k <= 1:
        return True
    lam = lambda_table(M)
    pop = popcount_table(n)
    for kk in range(1, k):
        if ((lam < kk) & (pop >= kk) & (n - pop >= kk)).any():
            return False
    return True


def is_3_connected(M: Matroid) -> bool:
    return is_k_connected(M, 3)


def is_two_separating_side(M: Matroid, B: Iterable[int]) -> bool:
    b = M.mask(B)
    return (
        connectivity_mask(M, b) <= 1 and popcount(b) >= 2 and M.size - popcount(b) >= 2
    )


def guts_coguts_classify(M: Matroid, sep: Separation, e: int) -> str:
    """Decide whether contracting e degrades the exact separation.

    Returns ``"contract-degenerate"`` when (X - e, Y) is a (k-1)-separation
    of M / e, and ``"safe"`` otherwise.  The minor-based test, the closure
    test and the coclosure test are all evaluated and must agree.
    """
    k = sep.order
    x = M.mask(sep.side)
    if not sep.exact or connectivity_mask(M, x) != k - 1:
        raise MatroidError("separation must be exact")
    n = M.size
    if popcount(x) < k or n - popcount(x) < k:
        raise MatroidError("not a k-separation")
    if not is_k_connected(M, k):
        raise MatroidError(f"M is not {k}-connected")
    if e not in sep.side:
        raise MatroidError(f"{e} is not on the given side")
    ebit = 1 << M.position(e)
    if M.rank_mask(ebit) == 0:
        raise MatroidError(f"{e} is a loop")
    y = M.full_mask ^ x
    xe = x & ~ebit

    Me = M.contract([e])
    side = Me.mask(M.labels_of(xe))
    lam_e = connectivity_mask(Me, side)
    via_minor = (
        k >= 2
        and lam_e < k - 1
        and popcount(xe) >= k - 1
        and popcount(y) >= k - 1
    )
    via_closure = bool(closure_mask(M, y) & ebit) and bool(closure_mask(M, xe) & ebit)
    via_coclosure = not (coclosure_mask(M, y) & ebit) and not (coclosure_mask(M, xe) & ebit)
    if not (via_minor == via_closure == via_coclosure):
        raise LemmaViolation(
            f"guts/coguts tests disagree for e={e}: "
            f"minor={via_minor} closure={via_closure} coclosure={via_coclosure}"
        )
    return "contract-degenerate" if via_minor else "safe"


def _two_sep_masks(M: Matroid, B: Iterable[int], N: Matroid) -> tuple[int, int]:
    b = M.mask(B)
    if not is_two_separating_side(M, M.labels_of(b)):
        raise MatroidError("(A, B) is not a 2-separation")
    a = M.full_mask ^ b
    return a, b


def route_2sep_minor(M: Matroid, N, B: Iterable[int]) -> tuple[str, MinorSpec]:
    """For a 2-separation (A, B) with B avoiding E(N), remove B wholesale.

    Returns ``("delete-B", spec)`` or ``("contract-B", spec)`` where ``spec``
    is a MinorSpec of M producing N exactly.
    """
    N = as_minor(M, N)
    a, b = _two_sep_masks(M, B, N)
    Bset = M.subset(b)
    if Bset & set(N.ground):
        raise MatroidError("B meets E(N)")
    for tag, op in (("delete-B", M.delete), ("contract-B", M.contract)):
        found = has_minor(op(Bset), N)
        if found is not None:
            if tag == "delete-B":
                spec = MinorSpec(found.contract, found.delete | Bset)
            else:
                spec = MinorSpec(found.contract | Bset, found.delete)
            return tag, spec
    if has_minor(M, N) is None:
        raise MatroidError("N is not a minor of M")
    raise LemmaViolation("neither M\\B nor M/B keeps N")


def two_sep_refinements(M: Matroid, B: Iterable[int]) -> tuple[frozenset, frozenset]:
    """Elements of B whose single removal is forced to keep any minor avoiding B.

    Returns (contract_safe, both_safe): contract_safe = B - cl(A) (contracting
    keeps the minor); both_safe = B - (cl(A) + cl*(A)) (either operation does).
    """
    b = M.mask(B)
    a = M.full_mask ^ b
    cl = closure_mask(M, a)
    cocl = coclosure_mask(M, a)
    return M.subset(b & ~cl), M.subset(b & ~(cl | cocl))


def _in_series_or_parallel(M: Matroid, f: int) -> bool:
    for cls in parallel_classes(M) + series_classes(M):
        if f in cls and len(cls) > 1:
            return True
    return False


def route_2sep_one_contact(M: Matroid, N, B: Iterable[int]) -> int:
    """For a 2-separation (A, B) with B meeting E(N) only in f, find
    e in B - f such that both M \\ e and M / e keep N."""
    N = as_minor(M, N)
    a, b = _two_sep_masks(M, B, N)
    if not is_connected(M):
        raise MatroidError("M must be connected")
    if not is_loopless_coloopless(N):
        raise MatroidError("N must have no loops or coloops")
    contact = M.subset(b) & set(N.ground)
    if len(contact) != 1:
        raise MatroidError("B must meet E(N) in exactly one element")
    (f,) = contact
    if _in_series_or_parallel(M, f):
        raise MatroidError(f"{f} is in a series or parallel pair")
    for i in bits_of(b):
        e = M.ground[i]
        if e == f:
            continue
        if has_minor(M.delete([e]), N) is not None and has_minor(M.contract([e]), N) is not None:
            return e
    raise LemmaViolation("no element of B - f keeps N under both deletion and contraction")


def bixby_branch(M: Matroid, e: int) -> frozenset:
    """Which of si(M/e) and co(M\\e) are 3-connected (never neither)."""
    if not is_3_connected(M):
        raise MatroidError("M must be 3-connected")
    out = set()
    if is_3_connected(simplify(M.contract([e]))[0]):
        out.add("simplified-contraction")
    if is_3_connected(cosimplify(M.delete([e]))[0]):
        out.add("cosimplified-deletion")
    if not out:
        raise LemmaViolation(f"neither si(M/{e}) nor co(M\\{e}) is 3-connected")
    return frozenset(out)


# -- fans -------------------------------------------------------------------

@dataclass(frozen=True)
class Fan:
    elements: tuple
    starts_with: str

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def ends(self) -> tuple:
        return self.elements[0], self.elements[-1]

    @property
    def internal(self) -> tuple:
        return self.elements[1:-1]

    def reversed(self) -> tuple:
        return tuple(reversed(self.elements))


def _triangle_triad_masks(M: Matroid) -> tuple[set, set]:
    tri, tra = set(), set()
    for a, b, c in itertools.combinations(range(M.size), 3):
        m = (1 << a) | (1 << b) | (1 << c)
        if M.rank_mask(m) == 2 and all(M.rank_mask(m & ~(1 << x)) == 2 for x in (a, b, c)):
            tri.add(m)
        if M.corank_mask(m) == 2 and all(M.corank_mask(m & ~(1 << x)) == 2 for x in (a, b, c)):
            tra.add(m)
    return tri, tra


def _is_fan_positions(seq, tri, tra) -> bool:
    if len(seq) < 3 or len(set(seq)) != len(seq):
        return False
    masks = [(1 << seq[i]) | (1 << seq[i + 1]) | (1 << seq[i + 2]) for i in range(len(seq) - 2)]
    # triples alternate between the two kinds, starting with either
    for kinds in ((tri, tra), (tra, tri)):
        if all(m in kinds[i % 2] for i, m in enumerate(masks)):
            return True
    return False


def is_fan(M: Matroid, seq: Iterable[int]) -> bool:
    """Consecutive triples alternate between triangles and triads.

    A triple that is both a triangle and a triad may play either role.
    """
    tri, tra = _triangle_triad_masks(M)
    return _is_fan_positions([M.position(x) for x in seq], tri, tra)


def _iter_fan_positions(M: Matroid, within: Optional[int] = None) -> Iterator[tuple]:
    tri, tra = _triangle_triad_masks(M)
    allowed = M.full_mask if within is None else within

    def grow(seq: tuple, kinds: tuple):
        # kinds[0] holds the last triple, kinds[1] must hold the next one
        yield seq
        used = sum(1 << p for p in seq)
        for x in bits_of(allowed & ~used):
            m = (1 << seq[-2]) | (1 << seq[-1]) | (1 << x)
            if m in kinds[1]:
                yield from grow(seq + (x,), (kinds[1], kinds[0]))

    seen = set()
    for m in sorted(tri | tra):
        if m & ~allowed:
            continue
        for perm in itertools.permutations(bits_of(m)):
            for kinds in ((tri, tra), (tra, tri)):
                if m not in kinds[0]:
                    continue
                for seq in grow(perm, kinds):
                    if seq not in seen:
                        seen.add(seq)
                        yield seq


def iter_fans(M: Matroid, within: Optional[Iterable[int]] = None) -> Iterator[tuple]:
    """Every fan (as a label sequence), optionally restricted to a subset."""
    wmask = None if within is None else M.mask(within)
    for seq in _iter_fan_positions(M, wmask):
        yield tuple(M.ground[p] for p in seq)


def _starts_with(M: Matroid, seq: tuple) -> str:
    m = M.mask(seq[:3])
    tri, _ = _triangle_triad_masks(M)
    return "triangle" if m in tri else "triad"


def find_fans(M: Matroid, within: Optional[Iterable[int]] = None) -> list[Fan]:
    """All inclusionwise-maximal fans (among fans inside ``within`` when given).

    Each is reported once, in the lexicographically least ordering that is a
    fan; the list is sorted by that ordering.
    """
    best: dict[frozenset, tuple] = {}
    for seq in iter_fans(M, within):
        key = frozenset(seq)
        if key not in best or seq < best[key]:
            best[key] = seq
    sets = list(best)
    maximal = [s for s in sets if not any(s < t for t in sets)]
    tri, _ = _triangle_triad_masks(M)
    out = []
    for s in maximal:
        seq = best[s]
        kind = "triangle" if M.mask(seq[:3]) in tri else "triad"
        out.append(Fan(seq, kind))
    return sorted(out, key=lambda f: f.elements)


def is_wheel_or_whirl(M: Matroid) -> bool:
    """Whether M is isomorphic to M(W_r) or W^r for some r >= 2."""
    n = M.size
    if n > ISO_CAP:
        raise MatroidError(f"wheel/whirl recognition limited to {ISO_CAP} elements")
    if n < 4 or n % 2 or M.full_rank != n // 2:
        return False
    r = n // 2
    return is_isomorphic(M, wheel(r)) or is_isomorphic(M, whirl(r))


def three_connected_with_minor(M: Matroid, N: Matroid) -> bool:
    return is_3_connected(M) and has_minor(M, N) is not None


def fan_end_removal(M: Matroid, N, F) -> tuple[int, str]:
    """Remove an end of a maximal fan of length >= 4, keeping 3-connectivity and N."""
    N = as_minor(M, N)
    seq = tuple(F.elements if isinstance(F, Fan) else F)
    if len(seq) < 4:
        raise MatroidError("fan must have at least four elements")
    if not is_fan(M, seq):
        raise MatroidError(f"{seq} is not a fan")
    if not is_3_connected(M):
        raise MatroidError("M must be 3-connected")
    if not is_loopless_coloopless(N):
        raise MatroidError("N must have no loops or coloops")
    if len(set(seq) & set(N.ground)) > 1:
        raise MatroidError("fan meets E(N) in more than one element")
    if any(frozenset(seq) < frozenset(f.elements) for f in find_fans(M)):
        raise MatroidError("fan is not maximal")
    if is_wheel_or_whirl(M):
        raise MatroidError("M is a wheel or a whirl")
    for x in sorted({seq[0], seq[-1]}):
        if x in N.ground:
            continue
        for op, minor in ((DELETE, M.delete([x])), (CONTRACT, M.contract([x]))):
            if three_connected_with_minor(minor, N):
                return x, op
    raise LemmaViolation(f"no end of fan {seq} can be removed keeping N")


def remove(M: Matroid, X: Iterable[int], op: str) -> Matroid:
    if op == DELETE:
        return M.delete(X)
    if op == CONTRACT:
        return M.contract(X)
    raise MatroidError(f"unknown operation {op!r}")
