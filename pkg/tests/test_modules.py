from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atomspec import filtration as fl
from atomspec.errors import InputError
from atomspec.pid import modules as pm
from atomspec.pid.rings import ZZ, PolyRingModP
from atomspec.spectrum import amin
from atomspec.suites import random_module
from atomspec.symbolic import IndexSet, SymbolicSet

from oracles import group_order_counts, is_prime

F2 = PolyRingModP(2)
G = pm.GENERIC


def Zmod(*factors, rank=0):
    return pm.PresentedModule.from_factors(ZZ, rank, factors)


def idx(*i):
    return SymbolicSet(frozenset(), IndexSet.finite(i))


def test_decompose_examples():
    M = pm.PresentedModule.build(ZZ, 2, [[2, 0], [0, 3]])
    assert pm.decompose(M) == pm.Decomposition(0, (6,))
    assert pm.decompose(pm.PresentedModule.build(ZZ, 1, [])) == pm.Decomposition(1, ())
    N = pm.PresentedModule.build(F2, 1, [[[0, 1, 1]]])
    assert pm.decompose(N) == pm.Decomposition(0, ((0, 1, 1),))
    zero_rel = pm.PresentedModule.build(ZZ, 3, [[0, 0], [0, 0], [0, 0]])
    assert pm.decompose(zero_rel).free_rank == 3


def test_module_file_validation():
    with pytest.raises(InputError):
        pm.load_module({"ring": "Z", "generators": 2, "relations": [[1]]})
    with pytest.raises(InputError):
        pm.load_module({"ring": "Z"})
    with pytest.raises(InputError):
        pm.load_module({"ring": "Z", "generators": 1, "relations": [["x"]]})
    M = pm.load_module({"ring": {"Fp": 3}, "generators": 1, "relations": [[[1, 0, 1]]]})
    assert pm.load_module(M.to_json()) == M


def test_spec_model():
    A = pm.spec_model(ZZ)
    assert A.view.is_alexandroff()
    assert pm.lambda_point(ZZ, G) == A.points
    assert A.view.leq(G, 0) and not A.view.leq(0, G)
    assert pm.spec_preview(ZZ, 3) == ["(0)", "(2)", "(3)", "(5)"]
    assert pm.spec_preview(F2, 3) == ["(0)", "(x)", "(x+1)", "(x^2+x+1)"]
    with pytest.raises(InputError):
        pm.spec_model(ZZ, 0)


def test_analyze_integers():
    a = pm.analyze(Zmod(rank=1))
    assert a.asupp == pm.spec_model(ZZ).points
    assert a.aass == a.amin == SymbolicSet(frozenset([G]))
    assert a.gkdim == a.kdim == a.dim == a.adim == 1


def test_analyze_z6():
    a = pm.analyze(Zmod(6))
    assert a.asupp == a.aass == a.amin == idx(0, 1)
    assert a.gkdim == a.dim == 0
    assert not a.classification.monoform


def test_zero_module_convention():
    for R in (ZZ, F2):
        a = pm.analyze(pm.zero_module(R))
        assert (a.gkdim, a.kdim, a.dim, a.adim) == (-1, -1, -1, -1)
        assert not a.asupp and not a.aass and not a.amin


def test_t_alpha_and_lambda():
    M = Zmod(6, rank=1)
    assert pm.decompose(pm.t_alpha(M, 0)) == pm.Decomposition(0, (6,))
    assert pm.analyze(pm.quotient_by_t_alpha(M, 0)).aass == SymbolicSet(frozenset([G]))
    assert pm.decompose(pm.t_alpha(M, 2)) == pm.Decomposition(0, (3,))
    assert not pm.lambda_M(M)
    assert pm.lambda_M(Zmod(rank=1)) == pm.analyze(Zmod(rank=1)).asupp
    assert pm.lambda_M(Zmod(4)) == idx(0)
    with pytest.raises(InputError):
        pm.t_alpha(M, 4)


def test_classification_examples():
    c4 = pm.classify(Zmod(4))
    assert not c4.monoform and c4.critical is None
    cz = pm.classify(Zmod(rank=1))
    assert cz.monoform and cz.compressible and cz.critical == 1
    assert cz.summary() == "monoform, compressible, 1-critical"
    c5 = pm.classify(Zmod(5))
    assert c5.simple and c5.critical == 0 == c5.atomic_critical
    cx = pm.classify(pm.PresentedModule.build(F2, 1, [[[1, 1, 1]]]))
    assert cx.simple


def test_bruteforce_examples():
    w = pm.monoform_witness(Zmod(4))
    assert w is not None and w.submodule == frozenset({(0,), (2,)})
    assert not pm.monoform_bruteforce(Zmod(2, 2))
    assert pm.monoform_bruteforce(Zmod(7))
    assert not pm.monoform_bruteforce(pm.zero_module())
    with pytest.raises(InputError):
        pm.monoform_bruteforce(Zmod(rank=1))
    with pytest.raises(InputError):
        pm.monoform_bruteforce(Zmod(300))
    with pytest.raises(InputError):
        pm.monoform_bruteforce(pm.PresentedModule.build(F2, 1, [[[0, 1]]]))


def test_group_shapes_are_complete_for_small_orders():
    # number of abelian groups of order n for n = 1..16
    expected = [1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]
    shapes = list(pm.abelian_group_shapes(16))
    counts = [0] * 16
    for s in shapes:
        n = 1
        for d in s:
            n *= d
        counts[n - 1] += 1
    assert counts == expected
    # distinct shapes give non-isomorphic groups: their element-order statistics differ
    stats = {tuple(sorted(group_order_counts(s).items())) for s in shapes}
    assert len(stats) == len(shapes)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(2, 12), min_size=1, max_size=3))
def test_bruteforce_simple_iff_prime_order(ds):
    M = pm.PresentedModule.build(ZZ, len(ds), [[d if i == j else 0 for j in range(len(ds))] for i, d in enumerate(ds)])
    order = 1
    for d in ds:
        order *= d
    if order > pm.MONOFORM_BOUND:
        return
    assert pm.monoform_bruteforce(M) == is_prime(order)


def modules_strategy():
    return st.integers(0, 10_000).map(lambda seed: random_module(random.Random(seed)))


@settings(max_examples=60, deadline=None)
@given(modules_strategy())
def test_analysis_invariants(M):
    a = pm.analyze(M)
    R = M.ring
    A = pm.spec_model(R)
    assert a.aass <= a.asupp
    assert a.amin == amin(A, a.asupp)
    assert a.amin.is_finite()
    assert a.gkdim == a.kdim == fl.gkdim(A, a.asupp)
    assert a.dim == a.adim == a.gkdim
    meet = A.points
    for p in a.aass.elements():
        meet = meet & pm.lambda_point(R, p)
    assert meet == a.lam
    # Λ(M) equals the support exactly when AAss = AMin is a single atom
    single = len(a.aass) == 1 and a.aass == a.amin
    assert (a.lam == a.asupp) == single
    for p in a.amin.elements():
        if p in a.lam:
            assert a.aass == SymbolicSet.of([p])
    for p in a.amin.elements():
        Q = pm.quotient_by_t_alpha(M, pm.prime_of(R, p))
        assert pm.analyze(Q).aass == SymbolicSet.of([p])
