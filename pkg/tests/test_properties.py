"""Property-based tests against the brute-force reference in oracle.py."""

from __future__ import annotations

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import oracle
from matroidlab.connectivity import connectivity, is_3_connected, iter_fans, is_fan
from matroidlab.core import closure, circuits, graphic, has_minor, linear
from matroidlab.decomposition import branch_width_by_decomposition
from matroidlab.tangle import branch_width, enumerate_tangles, tangle_matroid

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def matrices(draw, max_rows=4, max_cols=7):
    p = draw(st.sampled_from([2, 3]))
    r = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=r, max_size=r))
    return p, rows


@st.composite
def graphs(draw, max_v=5, max_e=7):
    v = draw(st.integers(1, max_v))
    edges = draw(st.lists(st.tuples(st.integers(0, v - 1), st.integers(0, v - 1)), min_size=1, max_size=max_e))
    return v, edges


@SETTINGS
@given(matrices())
def test_linear_rank_matches_reference(pm):
    p, rows = pm
    M = linear(p, rows)
    r = oracle.matrix_rank(rows, p)
    for X in oracle.subsets(M.ground):
        assert M.rank(X) == r(X)


@SETTINGS
@given(graphs())
def test_graphic_rank_matches_reference(g):
    v, edges = g
    M = graphic(v, edges)
    r = oracle.graphic_rank(v, edges)
    for X in oracle.subsets(M.ground):
        assert M.rank(X) == r(X)


@SETTINGS
@given(matrices())
def test_dual_is_involution_and_lambda_self_dual(pm):
    M = linear(*pm)
    D = M.dual()
    assert D.dual().same_rank_function(M)
    r = oracle.dual_rank(lambda X: M.rank(X), frozenset(M.ground))
    for X in oracle.subsets(M.ground):
        assert D.rank(X) == r(X)
        assert connectivity(M, X) == connectivity(D, X)
        assert connectivity(M, X) == M.rank(X) + D.rank(X) - len(X)


@SETTINGS
@given(matrices(max_cols=6))
def test_three_connectivity_matches_reference(pm):
    M = linear(*pm)
    assert is_3_connected(M) == oracle.three_connected(lambda X: M.rank(X), frozenset(M.ground))


@SETTINGS
@given(matrices(max_cols=6), st.data())
def test_minor_operations_commute(pm, data):
    M = linear(*pm)
    g = list(M.ground)
    C = frozenset(data.draw(st.sets(st.sampled_from(g))) if g else set())
    rest = [x for x in g if x not in C]
    D = frozenset(data.draw(st.sets(st.sampled_from(rest))) if rest else set())
    a = M.minor(C, D)
    b = M.delete(D).contract(C)
    assert a.same_rank_function(b)
    assert M.minor(C, D).dual().same_rank_function(M.dual().minor(D, C))
    ref = oracle.minor_rank(lambda X: M.rank(X), C)
    for X in oracle.subsets(a.ground):
        assert a.rank(X) == ref(X)
    assert has_minor(M, a) is not None


@SETTINGS
@given(matrices(max_cols=6))
def test_closure_and_circuits(pm):
    M = linear(*pm)
    g = frozenset(M.ground)
    for X in oracle.subsets(g):
        cl = closure(M, X)
        assert cl == {e for e in g if M.rank(X | {e}) == M.rank(X)}
    assert set(circuits(M)) == oracle.circuits(lambda X: M.rank(X), g)


@SETTINGS
@given(matrices(max_cols=5))
def test_tangles_match_reference(pm):
    M = linear(*pm)
    g = frozenset(M.ground)
    for theta in range(1, 3):
        expect = set(oracle.tangles(lambda X: M.rank(X), g, theta))
        assert {frozenset(T.members) for T in enumerate_tangles(M, theta)} == expect


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(matrices(max_cols=7))
def test_branch_width_duality(pm):
    M = linear(*pm)
    bw = branch_width(M)
    assert branch_width_by_decomposition(M)[0] == bw
    assert branch_width(M.dual()) == bw
    for T in enumerate_tangles(M, bw) if bw else []:
        MT = tangle_matroid(T)
        for X in oracle.subsets(M.ground):
            for e in set(M.ground) - X:
                assert MT.rank(X) <= MT.rank(X | {e}) <= MT.rank(X) + 1


@SETTINGS
@given(matrices(max_cols=6))
def test_fans_reverse(pm):
    M = linear(*pm)
    for seq in iter_fans(M):
        assert is_fan(M, seq[::-1])
