from __future__ import annotations

import itertools

import pytest

import oracle
from matroidlab.connectivity import (
    CONTRACT,
    DELETE,
    bixby_branch,
    connectivity,
    fan_end_removal,
    find_fans,
    guts_coguts_classify,
    is_3_connected,
    is_fan,
    is_k_connected,
    is_two_separating_side,
    iter_fans,
    k_separations,
    lambda_table,
    remove,
    route_2sep_minor,
    route_2sep_one_contact,
    two_sep_refinements,
)
from matroidlab.core import MinorSpec, graphic, has_minor, linear, uniform, wheel, whirl
from matroidlab.connectivity import is_wheel_or_whirl
from matroidlab.corpus import corpus, fan_graph_edges
from matroidlab.errors import MatroidError

from conftest import K4_EDGES

BOWTIE = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]


def test_lambda_examples(u24):
    assert connectivity(u24, []) == 0
    assert connectivity(u24, {0, 1}) == 2
    assert connectivity(uniform(3, 7), {0, 1}) == 2


def test_lambda_table_matches_definition(k4):
    r = oracle.graphic_rank(4, K4_EDGES)
    g = frozenset(range(6))
    t = lambda_table(k4)
    for X in oracle.subsets(g):
        assert t[k4.mask(X)] == oracle.lam(r, g, X)


def test_k_separations_examples(u24):
    assert k_separations(u24, 2) == []
    # a 3-separation needs both sides of size >= 3, impossible on four elements
    assert k_separations(u24, 3) == []
    two_triangles = graphic(5, BOWTIE)
    seps = k_separations(two_triangles, 1)
    sides = {min(s.side, two_triangles.ground and frozenset(two_triangles.ground) - s.side, key=sorted) for s in seps}
    assert frozenset({0, 1, 2}) in sides
    assert k_separations(uniform(3, 6), 1) == []


def test_k_separations_exact(k4):
    for s in k_separations(k4, 3, exact=True):
        assert s.exact and s.connectivity == 2


def test_three_connected_examples(u24):
    assert is_3_connected(u24)
    assert not is_3_connected(graphic(5, BOWTIE))
    assert is_3_connected(uniform(1, 2))
    assert not is_3_connected(graphic(3, [(0, 1), (1, 2), (0, 2), (0, 1)]))


def test_three_connected_agrees_with_definition():
    for e in corpus(1, 6):
        M = e.matroid
        r = M.rank
        assert is_3_connected(M) == oracle.three_connected(lambda X: r(X), frozenset(M.ground)), e.name


def test_is_k_connected_monotone(k4):
    assert is_k_connected(k4, 1) and is_k_connected(k4, 2) and is_k_connected(k4, 3)


def test_two_separating_side():
    M = graphic(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 0)])
    assert is_two_separating_side(M, {3, 4})
    assert not is_two_separating_side(M, {3})


def test_guts_coguts_example(u24):
    from matroidlab.connectivity import Separation

    sep = Separation(frozenset({0, 1}), 2, 1)
    with pytest.raises(MatroidError):
        # lambda({0,1}) = 2 in U(2,4), so this is not an exact 2-separation
        guts_coguts_classify(u24, sep, 0)


def test_guts_coguts_on_wheel():
    M = wheel(4)
    for sep in k_separations(M, 3, exact=True):
        for e in sorted(sep.side):
            tag = guts_coguts_classify(M, sep, e)
            assert tag in ("contract-degenerate", "safe")
            X = sep.side - {e}
            r = M.contract([e]).rank
            g = frozenset(M.ground) - {e}
            degenerate = len(X) >= 2 and oracle.lam(lambda Z: r(Z), g, X) < 2
            assert (tag == "contract-degenerate") == degenerate


def test_route_2sep_series_and_parallel_pairs():
    # a triangle {0,1,2} with edge 2 subdivided into the series pair {2,3}
    M = graphic(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    N = M.contract([2]).delete([3])
    tag, spec = route_2sep_minor(M, N, {2, 3})
    assert tag in ("delete-B", "contract-B")
    assert M.minor(spec.contract, spec.delete).same_rank_function(N)
    Mp = graphic(3, [(0, 1), (1, 2), (2, 0), (2, 0)])
    N = Mp.delete([2, 3])
    tag, spec = route_2sep_minor(Mp, N, {2, 3})
    assert tag == "delete-B"


def test_two_element_sides_are_series_or_parallel():
    from matroidlab.core import parallel_classes, series_classes

    for e in corpus(1, 7):
        M = e.matroid
        if not is_k_connected(M, 2):
            continue
        pairs = {frozenset(c) for c in itertools.combinations(M.ground, 2) if is_two_separating_side(M, c)}
        classes = parallel_classes(M) + series_classes(M)
        for p in pairs:
            assert any(p <= c for c in classes), (e.name, p)


def test_two_sep_refinements_are_subsets():
    M = graphic(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    contract_safe, both_safe = two_sep_refinements(M, {2, 3})
    assert both_safe <= contract_safe <= {2, 3}


def test_route_one_contact_needs_single_contact(u24):
    with pytest.raises(MatroidError):
        route_2sep_one_contact(u24, u24, {0, 1})


def test_bixby_examples(u24, k4):
    assert bixby_branch(u24, 0) == {"simplified-contraction", "cosimplified-deletion"}
    for e in k4.ground:
        assert bixby_branch(k4, e)
    with pytest.raises(MatroidError):
        bixby_branch(graphic(5, BOWTIE), 0)


def test_fans_u24(u24):
    fans = find_fans(u24)
    assert fans
    # every 3-set is both a triangle and a triad, so all four elements form a fan
    assert all(len(f) == 4 for f in fans)


def test_fan_graph_has_long_fan():
    M = graphic(4, fan_graph_edges(3))
    fans = find_fans(M)
    assert sum(len(f) >= 4 for f in fans) == 1
    assert is_fan(M, fans[0].elements)


def test_fan_reversal_and_brute_force():
    M = wheel(4)
    tri = {frozenset(c) for c in itertools.combinations(M.ground, 3) if M.rank(c) == 2 and all(M.rank(p) == 2 for p in itertools.combinations(c, 2))}
    D = M.dual()
    tra = {frozenset(c) for c in itertools.combinations(M.ground, 3) if D.rank(c) == 2 and all(D.rank(p) == 2 for p in itertools.combinations(c, 2))}

    def brute(seq):
        ts = [frozenset(seq[i:i + 3]) for i in range(len(seq) - 2)]
        return any(all(t in kinds[i % 2] for i, t in enumerate(ts)) for kinds in ((tri, tra), (tra, tri)))

    found = set(iter_fans(M))
    for k in range(3, 6):
        for seq in itertools.permutations(M.ground, k):
            assert (seq in found) == brute(seq)
            assert is_fan(M, seq) == brute(seq)
    for f in find_fans(M):
        assert is_fan(M, f.reversed())


def test_wheel_or_whirl_examples(u24, k4):
    assert is_wheel_or_whirl(u24)
    assert is_wheel_or_whirl(k4)
    assert not is_wheel_or_whirl(uniform(3, 6))
    assert is_wheel_or_whirl(whirl(3))
    assert is_wheel_or_whirl(wheel(4))


def _k5_minus_edge():
    from matroidlab.corpus import named_graphs

    (v, E), = [(v, E) for name, v, E in named_graphs() if name == "M(K5\\e)"]
    return graphic(v, E)


def test_fan_end_removal_on_named_graph():
    M = _k5_minus_edge()
    assert is_3_connected(M) and not is_wheel_or_whirl(M)
    empty = MinorSpec(frozenset(), frozenset(M.ground))
    long_fans = [F for F in find_fans(M) if len(F) >= 4]
    assert long_fans
    for F in long_fans:
        x, op = fan_end_removal(M, empty, F)
        assert x in F.ends and op in (DELETE, CONTRACT)
        out = remove(M, [x], op)
        assert oracle.three_connected(lambda X: out.rank(X), frozenset(out.ground))
        # internal elements never admit a 3-connected removal here
        for y in F.internal:
            for op2 in (DELETE, CONTRACT):
                o = remove(M, [y], op2)
                assert not oracle.three_connected(lambda X: o.rank(X), frozenset(o.ground))


def test_fan_end_removal_rejects_short_fan(u24):
    with pytest.raises(MatroidError):
        fan_end_removal(u24, MinorSpec(frozenset(), frozenset(range(4))), (0, 1, 2))


def test_remove_unknown_op(u24):
    with pytest.raises(MatroidError):
        remove(u24, [0], "squash")


def test_has_minor_used_by_routing_is_exact():
    M = linear(2, [[1, 0, 0, 1, 1], [0, 1, 0, 1, 0], [0, 0, 1, 0, 1]])
    assert has_minor(M, M.delete([4])) == MinorSpec((), {4})
