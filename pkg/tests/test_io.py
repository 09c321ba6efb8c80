from __future__ import annotations

import json

import pytest

from matroidlab import io
from matroidlab.core import graphic, linear, relax, uniform, wheel, wheel_rim, whirl
from matroidlab.corpus import corpus
from matroidlab.decomposition import branch_width_by_decomposition, decomposition_width
from matroidlab.errors import MatroidError
from matroidlab.tangle import enumerate_tangles, validate_tangle

from conftest import K4_EDGES


@pytest.mark.parametrize(
    "M",
    [
        uniform(2, 4),
        uniform(2, 4, labels=[3, 5, 7, 9]),
        graphic(4, K4_EDGES),
        linear(3, [[1, 0, 1, 2], [0, 1, 1, 1]]),
        whirl(3),
        uniform(3, 6).minor({0}, {1}),
        uniform(2, 5).dual(),
    ],
)
def test_round_trip(M, tmp_path):
    back = io.loads(io.dumps(M))
    assert back.ground == M.ground
    assert back.same_rank_function(M)
    path = tmp_path / "m.json"
    io.dump(M, path)
    assert io.load(path).same_rank_function(M)


def test_round_trip_corpus():
    for e in corpus(1, 6):
        back = io.loads(io.dumps(e.matroid))
        assert back.same_rank_function(e.matroid), e.name


def test_all_types_parse():
    docs = [
        {"type": "uniform", "rank": 2, "size": 4},
        {"type": "graphic", "vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]},
        {"type": "linear", "field": 2, "matrix": [[1, 0, 1], [0, 1, 1]]},
        {"type": "table", "size": 2, "ranks": [0, 1, 1, 1]},
        {"type": "minor", "base": {"type": "uniform", "rank": 3, "size": 6}, "contract": [2, 3], "delete": [4, 5]},
        {"type": "dual", "base": {"type": "uniform", "rank": 1, "size": 3}},
    ]
    for d in docs:
        io.from_dict(d)
    M = io.from_dict(docs[4])
    assert M.ground == (0, 1) and M.same_rank_function(uniform(1, 2))
    assert io.from_dict(docs[5]).same_rank_function(uniform(2, 3))


def test_relax_doc_matches_whirl():
    base = wheel(2)
    d = {"type": "relax", "base": io.to_dict(base), "set": sorted(wheel_rim(2))}
    assert io.from_dict(d).same_rank_function(relax(base, wheel_rim(2)))


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[]",
        '{"type": "bogus"}',
        '{"type": "uniform", "rank": 2}',
        '{"type": "uniform", "rank": "2", "size": 4}',
        '{"type": "table", "size": 2, "ranks": [0, 1, 1]}',
        '{"type": "table", "size": 2, "ranks": [0, 2, 1, 1]}',
        '{"type": "linear", "field": 2, "matrix": [[1, 0], [1]]}',
        '{"type": "uniform", "rank": 2, "size": 4, "labels": [0, 1]}',
        '{"type": "uniform", "rank": 2, "size": 4, "labels": [0, 0, 1, 2]}',
        '{"type": "uniform", "rank": 2, "size": 99}',
    ],
)
def test_malformed_inputs(text):
    with pytest.raises(MatroidError):
        io.loads(text)


def test_missing_file(tmp_path):
    with pytest.raises(MatroidError):
        io.load(tmp_path / "absent.json")


def test_tangle_round_trip(u24):
    T = enumerate_tangles(u24, 2)[0]
    d = json.loads(json.dumps(io.tangle_to_dict(T)))
    back = io.tangle_from_dict(u24, d)
    assert back == T
    assert validate_tangle(u24, back.members, back.order).valid
    bad = {"order": 3, "members": d["members"] + [[0, 1]]}
    with pytest.raises(MatroidError):
        io.tangle_from_dict(u24, bad)


def test_tree_round_trip(k4):
    width, tree = branch_width_by_decomposition(k4)
    back = io.tree_from_dict(json.loads(json.dumps(io.tree_to_dict(tree))))
    assert decomposition_width(k4, back) == width


def test_minor_spec_round_trip():
    M = uniform(3, 6)
    from matroidlab.core import has_minor

    spec = has_minor(M, uniform(1, 2))
    back = io.minor_spec_from_dict(json.loads(json.dumps(spec.to_dict())))
    assert back == spec
    with pytest.raises(MatroidError):
        io.minor_spec_from_dict([])
