from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atomspec.errors import InputError
from atomspec.order_core import (
    build_preorder,
    extremal_elements,
    is_poset,
    kolmogorov_collapse,
    load_preorder,
    longest_chain_above,
    posets_up_to_isomorphism,
    to_dot,
    topological_order,
    transitive_reduction,
    up_heights,
)

from oracles import longest_chain_from

POINTS = ["a", "b", "c", "d", "e"]

pairs_strategy = st.lists(st.tuples(st.sampled_from(POINTS), st.sampled_from(POINTS)), max_size=8)


def closure_by_iteration(points, pairs):
    rel = {(p, p) for p in points} | set(pairs)
    while True:
        new = {(a, d) for a, b in rel for c, d in rel if b == c} - rel
        if not new:
            return rel
        rel |= new


def test_chain_closure():
    P = build_preorder(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert P.leq("a", "c")
    assert not P.leq("c", "a")
    assert is_poset(P)


def test_cycle_gives_preorder_and_collapse():
    P = build_preorder(["a", "b", "c"], [("a", "b"), ("b", "a"), ("b", "c")])
    assert not is_poset(P)
    Q, proj = kolmogorov_collapse(P)
    assert proj["a"] == proj["b"] == "{a,b}"
    assert Q.points == ("{a,b}", "c")
    assert Q.leq("{a,b}", "c") and is_poset(Q)


def test_unknown_and_duplicate_points():
    with pytest.raises(InputError):
        build_preorder(["a"], [("a", "z")])
    with pytest.raises(InputError):
        build_preorder(["a", "a"])
    with pytest.raises(InputError):
        build_preorder([f"p{i}" for i in range(5)], max_points=4)


@given(pairs_strategy)
def test_closure_matches_fixpoint_iteration(pairs):
    P = build_preorder(POINTS, pairs)
    assert set(P.pairs()) == closure_by_iteration(POINTS, pairs)


@given(pairs_strategy)
def test_reduction_regenerates_order(pairs):
    P = build_preorder(POINTS, pairs)
    assert build_preorder(POINTS, transitive_reduction(P)) == P


@given(pairs_strategy)
def test_collapse_is_poset_and_projection_monotone(pairs):
    P = build_preorder(POINTS, pairs)
    Q, proj = kolmogorov_collapse(P)
    assert is_poset(Q)
    for a in POINTS:
        for b in POINTS:
            assert P.leq(a, b) == Q.leq(proj[a], proj[b])


@settings(max_examples=60)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(lambda t: t[0] < t[1]), max_size=8))
def test_heights_against_naive_chains(raw):
    pairs = [(POINTS[i], POINTS[j]) for i, j in raw]
    P = build_preorder(POINTS, pairs)
    lt = {(a, b) for a, b in P.pairs() if a != b}
    h = up_heights(P)
    for p in POINTS:
        assert h[p] == longest_chain_from(POINTS, lt, p) == longest_chain_above(P, p)
    order = topological_order(P)
    pos = {p: i for i, p in enumerate(order)}
    assert all(pos[a] < pos[b] for a, b in lt)


def test_heights_reject_preorders():
    P = build_preorder(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(InputError):
        up_heights(P)


def test_extremal_elements():
    P = build_preorder(["a", "b", "c"], [("a", "b"), ("a", "c")])
    assert extremal_elements(P, "maximal") == ["b", "c"]
    assert extremal_elements(P, "minimal") == ["a"]


def test_dot_export_of_chain():
    P = build_preorder(["a", "b", "c"], [("a", "b"), ("b", "c")])
    dot = to_dot(P)
    assert '"a" -> "b";' in dot and '"b" -> "c";' in dot
    assert '"a" -> "c";' not in dot


def test_load_preorder_document():
    P = load_preorder({"points": ["x", "y"], "leq": [["x", "y"]]})
    assert P.leq("x", "y")
    with pytest.raises(InputError):
        load_preorder({"leq": []})


def test_unlabelled_poset_counts():
    # number of posets on n unlabelled points: 1, 1, 2, 5, 16, 63
    assert [len(posets_up_to_isomorphism(n)) for n in range(6)] == [1, 1, 2, 5, 16, 63]
