from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from atomspec import filtration as fl
from atomspec import finspace as fs
from atomspec.models import builtin_space, complete
from atomspec.order_core import build_preorder
from atomspec.spectrum import finite_atom_space
from atomspec.symbolic import IndexSet, SymbolicSet

from oracles import longest_chain_from

CHAIN3 = finite_atom_space(fs.poset_space(["a", "b", "c"], [("a", "b"), ("b", "c")]))


def test_chain_dimensions():
    F = fl.gabriel_filtration(CHAIN3)
    assert [sorted(s.named) for s in F.stages] == [["c"], ["b"], ["a"]]
    assert fl.gkdim(CHAIN3, "a", F) == fl.dim_point(CHAIN3, "a", F) == fl.adim(CHAIN3, "a") == 2
    whole = CHAIN3.points
    assert fl.gkdim(CHAIN3, whole) == fl.dim_open(CHAIN3, whole) == fl.adim(CHAIN3, whole) == 2


def test_empty_open_has_dimension_minus_one():
    empty = SymbolicSet()
    assert fl.gkdim(CHAIN3, empty) == fl.dim_open(CHAIN3, empty) == fl.adim(CHAIN3, empty) == -1


def test_grmod_kx_dimension_gap():
    A = builtin_space("grmod_kx")
    F = fl.gabriel_filtration(A)
    supp = A.support("k[x]")
    assert fl.gkdim(A, supp, F) == 1
    assert fl.dim_open(A, supp, F) == 0
    assert fl.dim_point(A, "b", F) is None
    assert fl.fmt(fl.dim_point(A, "b", F)) == "does-not-exist"
    assert fl.adim(A, "b") == 0
    assert F.stages == [SymbolicSet(frozenset(), IndexSet.everything()), SymbolicSet(frozenset(["b"]))]


def test_goodearl_stages():
    A = builtin_space("goodearl")
    F = fl.gabriel_filtration(A)
    assert F.stages == [SymbolicSet(frozenset(), IndexSet.naturals()), SymbolicSet(frozenset(["b"]))]
    assert fl.gkdim(A, A.support("B"), F) == 1


def test_indiscrete_space_stalls():
    A = finite_atom_space(fs.generate_topology(["a", "b"], []))
    F = fl.gabriel_filtration(A)
    assert F.stalled and F.stages == []
    assert F.stage_of("a") is fl.OMEGA
    assert str(fl.gkdim(A, A.points, F)) == "≥ω"
    assert fl.verify_theorems(A).ok


def test_stage_cap():
    P = build_preorder([f"p{i}" for i in range(6)], [(f"p{i}", f"p{i+1}") for i in range(5)])
    A = finite_atom_space(fs.alexandroff_space(P))
    F = fl.gabriel_filtration(A, stage_cap=3)
    assert F.stage_cap_hit and len(F.stages) == 3 and F.stalled


def test_theorem_reports_on_builtins():
    for name in ("grmod_kx", "goodearl"):
        A = builtin_space(name)
        rep = fl.verify_theorems(A, name)
        assert not rep.alexandroff and rep.ok
        assert rep.check("alexchar").witnesses == ["b"]
        assert all(rep.check(k).holds for k in ("coindim", "stab", "dist", "coro"))
        done = fl.verify_theorems(complete(A))
        assert done.alexandroff and all(c.holds for c in done.checks)
    for name in ("spec_Z", "spec_F2x"):
        rep = fl.verify_theorems(builtin_space(name))
        assert rep.alexandroff and all(c.holds for c in rep.checks)


def test_spec_z_dimensions():
    A = builtin_space("spec_Z")
    F = fl.gabriel_filtration(A)
    assert fl.gkdim(A, "(0)", F) == fl.dim_point(A, "(0)", F) == fl.adim(A, "(0)") == 1
    assert fl.gkdim(A, 3, F) == 0


posets = st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(lambda t: t[0] < t[1]), max_size=7)


@settings(max_examples=60, deadline=None)
@given(posets)
def test_random_posets_all_dimensions_agree_with_chain_lengths(raw):
    names = [f"q{i}" for i in range(5)]
    P = build_preorder(names, [(names[i], names[j]) for i, j in raw])
    A = finite_atom_space(fs.alexandroff_space(P))
    F = fl.gabriel_filtration(A)
    lt = {(a, b) for a, b in P.pairs() if a != b}
    for p in names:
        h = longest_chain_from(names, lt, p)
        assert F.stage_of(p) == fl.dim_point(A, p, F) == fl.adim(A, p) == h
    rep = fl.verify_theorems(A)
    assert all(c.holds for c in rep.checks)


def test_report_json_shape():
    rep = fl.verify_theorems(CHAIN3, "chain")
    doc = rep.to_json()
    assert doc["model"] == "chain" and doc["ok"] and len(doc["checks"]) == 7
