from __future__ import annotations

import itertools

import numpy as np
import pytest

import oracle
from matroidlab.core import (
    MinorSpec,
    circuits,
    closure,
    coclosure,
    contract,
    coloops,
    cosimplify,
    delete,
    dual,
    from_table,
    full_closure,
    graphic,
    has_minor,
    is_circuit_hyperplane,
    is_closed,
    linear,
    loops,
    minor,
    parallel_classes,
    rank,
    relax,
    remove_loops_coloops_minor,
    series_classes,
    simplify,
    triads,
    triangles,
    uniform,
    wheel,
    wheel_graph_edges,
    wheel_rim,
    whirl,
)
from matroidlab.errors import GroundSetTooLarge, MatroidError

from conftest import K4_EDGES


def test_rank_examples(u24, k4):
    assert rank(u24, []) == 0
    assert rank(u24, [0, 1, 2]) == 2
    assert rank(k4, range(6)) == 3


def test_rank_unknown_label(u24):
    with pytest.raises(MatroidError):
        u24.rank([7])


def test_dual_uniform(u24):
    assert dual(u24).same_rank_function(u24)
    assert dual(uniform(2, 5)).same_rank_function(uniform(3, 5))


def test_contract_uniform():
    M = contract(uniform(3, 6), [0])
    assert M.ground == (1, 2, 3, 4, 5)
    assert M.same_rank_function(uniform(2, 5, labels=[1, 2, 3, 4, 5]))


def test_minor_uniform():
    M = minor(uniform(3, 6), MinorSpec({2, 3}, {4, 5}))
    assert M.ground == (0, 1)
    assert M.same_rank_function(uniform(1, 2))


def test_delete_keeps_labels():
    M = delete(uniform(2, 5), [1, 3])
    assert M.ground == (0, 2, 4)


def test_minor_overlap_rejected():
    with pytest.raises(MatroidError):
        MinorSpec({1}, {1})
    with pytest.raises(MatroidError):
        uniform(2, 4).minor([1], [1])


def test_closure_examples(u24, k4):
    assert closure(u24, {0, 1}) == frozenset(range(4))
    M = graphic(3, [(0, 0), (0, 1), (1, 2), (0, 2)])
    assert closure(M, []) == loops(M) == frozenset({0})
    assert full_closure(k4, {2}) == frozenset({2})


def test_coclosure_is_dual_closure(k4):
    for X in oracle.subsets(k4.ground):
        assert coclosure(k4, X) == closure(k4.dual(), X)


def test_is_closed(u24):
    assert is_closed(u24, {0})
    assert not is_closed(u24, {0, 1, 2})


def test_loops_coloops():
    M = graphic(3, [(0, 0), (0, 1), (1, 2), (1, 2)])
    assert loops(M) == {0}
    assert coloops(M) == {1}


def test_triangles_triads(u24):
    assert triangles(uniform(2, 3)) == [frozenset({0, 1, 2})]
    # every 3-set of U(2,4) is a triad as well, since U(2,4) is self-dual
    assert set(triads(u24)) == {frozenset(c) for c in itertools.combinations(range(4), 3)}
    assert triads(uniform(2, 3)) == []


def test_parallel_series_classes():
    assert parallel_classes(uniform(1, 3)) == [frozenset({0, 1, 2})]
    assert series_classes(uniform(2, 3)) == [frozenset({0, 1, 2})]


def test_simplify_examples(u24):
    S, kept = simplify(uniform(1, 3))
    assert kept == (0,)
    assert S.same_rank_function(uniform(1, 1))
    S, kept = simplify(u24)
    assert kept == (0, 1, 2, 3) and S.same_rank_function(u24)
    S, kept = cosimplify(uniform(1, 3).dual())
    assert kept == (0,)
    assert S.same_rank_function(uniform(1, 1).dual())


def test_circuits_examples(u24, k4):
    assert set(circuits(u24)) == {frozenset(c) for c in itertools.combinations(range(4), 3)}
    assert circuits(uniform(3, 3)) == []
    cs = circuits(k4)
    assert sum(len(c) == 3 for c in cs) == 4
    assert sum(len(c) == 4 for c in cs) == 3
    assert set(cs) == oracle.circuits(oracle.graphic_rank(4, K4_EDGES), frozenset(range(6)))


def test_circuits_max_size(k4):
    assert all(len(c) <= 3 for c in circuits(k4, max_size=3))
    assert len(circuits(k4, max_size=3)) == 4


def test_has_minor_examples(u24):
    M = uniform(3, 6)
    spec = has_minor(M, uniform(1, 2))
    assert spec is not None
    assert minor(M, spec).same_rank_function(uniform(1, 2))
    assert has_minor(u24, u24) == MinorSpec()
    assert has_minor(u24, uniform(3, 3)) is None


def test_has_minor_agrees_with_brute_force():
    M = wheel(3)
    r = oracle.graphic_rank(4, [tuple(e) for e in wheel_graph_edges(3)])
    g = frozenset(M.ground)
    for N_ground in itertools.combinations(M.ground, 3):
        for Nr in (oracle.uniform_rank(2), oracle.uniform_rank(3), oracle.uniform_rank(1)):
            Nm = from_table(
                list(N_ground),
                np.array([Nr(frozenset(b for b in range(3) if m >> b & 1)) for m in range(8)], dtype=np.int16),
            )
            expect = oracle.has_exact_minor(r, g, lambda X, Nr=Nr, N_ground=N_ground: Nr(frozenset(N_ground.index(x) for x in X)), frozenset(N_ground))
            assert (has_minor(M, Nm) is not None) == expect


def test_relax_examples():
    W2 = wheel(2)
    rim = wheel_rim(2)
    assert is_circuit_hyperplane(W2, rim)
    R = relax(W2, rim)
    assert R.same_rank_function(uniform(2, 4))
    assert R.rank(rim) == W2.rank(rim) + 1
    for X in oracle.subsets(W2.ground):
        if X != rim:
            assert R.rank(X) == W2.rank(X)


def test_relax_rejects_non_circuit_hyperplane(u24):
    with pytest.raises(MatroidError):
        relax(u24, {0, 1})


def test_whirl_is_relaxed_wheel():
    for r in (2, 3, 4):
        assert whirl(r).same_rank_function(relax(wheel(r), wheel_rim(r)))


def test_remove_loops_coloops_examples(u24):
    spec = MinorSpec({0}, {1})
    assert remove_loops_coloops_minor(u24, spec) == spec
    loop_spec = MinorSpec({1, 2}, {3})
    assert u24.minor({1, 2}, {3}).same_rank_function(uniform(0, 1))
    out = remove_loops_coloops_minor(u24, loop_spec)
    N = minor(u24, out)
    assert N.size == 2 and 0 in N.ground
    assert N.same_rank_function(uniform(1, 2, labels=N.ground))
    coloop_spec = MinorSpec({3}, {1, 2})
    out = remove_loops_coloops_minor(u24, coloop_spec)
    N = minor(u24, out)
    assert N.size == 2 and not loops(N) and not coloops(N)


def test_linear_rank_matches_elimination():
    matrix = [[1, 0, 1, 2, 0], [0, 1, 1, 1, 2], [1, 1, 0, 0, 1]]
    M = linear(3, matrix)
    r = oracle.matrix_rank(matrix, 3)
    for X in oracle.subsets(range(5)):
        assert M.rank(X) == r(X)


def test_linear_rejects_bad_field():
    with pytest.raises(MatroidError):
        linear(4, [[1, 0]])


def test_ground_set_cap(monkeypatch):
    monkeypatch.setenv("MATROIDLAB_MAX_N", "5")
    with pytest.raises(GroundSetTooLarge):
        uniform(2, 6)


def test_graphic_rank_matches_forest_count(k4):
    r = oracle.graphic_rank(4, K4_EDGES)
    for X in oracle.subsets(range(6)):
        assert k4.rank(X) == r(X)
