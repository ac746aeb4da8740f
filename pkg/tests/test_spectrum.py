from __future__ import annotations

import pytest

from atomspec import finspace as fs
from atomspec.errors import InputError
from atomspec.models import builtin_space, kx_support
from atomspec.spectrum import (
    Support,
    amin,
    finite_atom_space,
    lambda_open_check,
    load_atom_space,
    maximal_atoms,
    order_maximal,
    remove_open,
    strictly_above,
)
from atomspec.symbolic import IndexSet, SymbolicSet

V_SHAPE = fs.poset_space(["x", "y", "z"], [("x", "y"), ("x", "z")])


def pts(*names):
    return SymbolicSet(frozenset(names))


def test_finite_amin_and_maximal():
    A = finite_atom_space(V_SHAPE)
    assert maximal_atoms(A) == pts("y", "z") == order_maximal(A)
    assert amin(A, A.points) == pts("x")
    assert amin(A, pts("y", "z")) == pts("y", "z")
    assert strictly_above(A, "x") == pts("y", "z")
    with pytest.raises(InputError):
        amin(A, pts("x"))


def test_remove_open_uses_trace_topology():
    A = finite_atom_space(V_SHAPE, {"all": Support(pts("x", "y", "z"))})
    B = remove_open(A, pts("y"))
    assert B.points == pts("x", "z")
    assert B.support("all") == pts("x", "z")
    assert maximal_atoms(B) == pts("z")


def test_support_must_be_open():
    with pytest.raises(InputError):
        finite_atom_space(V_SHAPE, {"bad": Support(pts("x"))})


def test_grmod_kx_amin_is_whole_support():
    A = builtin_space("grmod_kx")
    assert amin(A, A.support("k[x]")) == kx_support()
    assert maximal_atoms(A) == SymbolicSet(frozenset(), IndexSet.everything())


def test_goodearl_amin_infinite_and_lambda_b_not_open():
    A = builtin_space("goodearl")
    m = amin(A, A.support("B"))
    assert m == SymbolicSet(frozenset(["b"]), IndexSet.naturals())
    assert not m.is_finite()
    rep = lambda_open_check(A, m)
    assert rep.not_open_at == pts("b")
    assert rep.open_at == SymbolicSet(frozenset(), IndexSet.naturals())


def test_removing_simples_makes_b_maximal():
    A = builtin_space("grmod_kx")
    B = remove_open(A, maximal_atoms(A))
    assert B.points == pts("b")
    assert maximal_atoms(B) == pts("b")


def test_load_atom_space_documents():
    doc = {
        "space": {"points": ["a", "b"], "leq": [["a", "b"]]},
        "supports": {"M": {"set": ["a", "b"], "noetherian": True, "aass": ["a"]}},
    }
    A = load_atom_space(doc)
    assert A.support("M") == pts("a", "b")
    assert A.supports["M"].aass == pts("a")
    tail = {
        "named": ["b"], "domain": "Z", "family": "s",
        "descriptors": [{"kind": "singletons"}, {"kind": "tail", "point": "b", "dir": "leq"}],
    }
    T = load_atom_space({"space": tail, "supports": {"k": {"set": {"named": ["b"], "indexed": {"tail": 0}}}}})
    assert T.support("k") == kx_support()
    with pytest.raises(InputError):
        load_atom_space({"space": {"nonsense": 1}})
