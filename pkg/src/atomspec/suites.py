"""Acceptance suites shared by ``atomspec verify`` and the test-suite."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from . import filtration as fl
from . import finspace as fs
from . import tailspace as ts
from .models import builtin_space, complete, kx_support
from .order_core import posets_up_to_isomorphism, up_heights
from .pid import modules as pm
from .pid.rings import ZZ, PolyRingModP
from .pid.snf import minor_gcd_factors, snf, verify
from .spectrum import amin, finite_atom_space, lambda_open_check
from .symbolic import IndexSet, SymbolicSet

SEED = 20240611


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    @property
    def ok(self) -> bool:
        return self.passed and self.seconds < self.limit

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        slow = "" if self.seconds < self.limit else " (too slow)"
        return f"[{tag}] C{self.number:<2} {self.title}: {self.detail} [{self.seconds:.2f}s < {self.limit:g}s{slow}]"


def _topologies_upto(n: int) -> list[fs.FinSpace]:
    return [X for k in range(n + 1) for X in fs.all_topologies(k)]


def c1_adjunction() -> tuple[bool, str]:
    n_pre = n_top = 0
    for k in range(5):
        for P in fs.all_preorders(k):
            n_pre += 1
            if fs.specialization_preorder(fs.alexandroff_space(P)) != P:
                return False, f"T(S(P)) != P for {sorted(P.pairs())}"
    for X in _topologies_upto(4):
        n_top += 1
        if fs.alexandroff_space(fs.specialization_preorder(X)) != X:
            return False, f"S(T(X)) != X on {X.points}"
        if not fs.counit_compare(X).equal:
            return False, f"counit_compare reports a difference on {X.points}"
    return True, f"{n_pre} preorders, {n_top} topologies"


def c2_kolmogorov() -> tuple[bool, str]:
    count = 0
    for X in _topologies_upto(4):
        Q, proj = fs.kolmogorov_quotient(X)
        if not fs.is_kolmogorov(Q):
            return False, f"quotient of {sorted(X.opens)} is not Kolmogorov"
        Q2, proj2 = fs.kolmogorov_quotient(Q)
        if Q2 != Q or any(proj2[p] != p for p in Q.points):
            return False, f"quotient of {sorted(X.opens)} is not idempotent"
        count += 1
    return True, f"{count} spaces"


def _posets() -> list:
    return [P for n in range(6) for P in posets_up_to_isomorphism(n)]


def c3_dimensions() -> tuple[bool, str]:
    n_pts = n_opens = 0
    posets = _posets()
    for P in posets:
        A = finite_atom_space(fs.alexandroff_space(P))
        F = fl.gabriel_filtration(A)
        h = up_heights(P)
        for p in P.points:
            vals = (F.stage_of(p), fl.dim_point(A, p, F), fl.adim(A, p), h[p])
            if len(set(vals)) != 1:
                return False, f"point {p} of {sorted(P.pairs())}: gkdim/dim/adim/height = {vals}"
            n_pts += 1
        for O in fs.alexandroff_space(P).open_sets():
            S = SymbolicSet(O)
            want = max((h[p] for p in O), default=-1)
            vals = (fl.gkdim(A, S, F), fl.dim_open(A, S, F), fl.adim(A, S), want)
            if len(set(vals)) != 1:
                return False, f"open {sorted(O)} of {sorted(P.pairs())}: {vals}"
            n_opens += 1
    return True, f"{len(posets)} posets, {n_pts} points, {n_opens} opens"


def c4_grmod() -> tuple[bool, str]:
    A = builtin_space("grmod_kx")
    F = fl.gabriel_filtration(A)
    supp = A.support("k[x]")
    g, d = fl.gkdim(A, supp, F), fl.dim_open(A, supp, F)
    alex = A.view.is_alexandroff()
    db = fl.dim_point(A, "b", F)
    ok = g == 1 and d == 0 and not alex and alex.witnesses == SymbolicSet(frozenset(["b"])) and db is None
    return ok, f"gkdim={g} dim={d} alexandroff={alex.holds} witness={A.view.describe(alex.witnesses)} dim(b)={fl.fmt(db)}"


def c5_minimal_atoms() -> tuple[bool, str]:
    B = builtin_space("goodearl")
    m = amin(B, B.support("B"))
    want = SymbolicSet(frozenset(["b"]), IndexSet.naturals())
    lam = lambda_open_check(B, SymbolicSet(frozenset(["b"])))
    G = builtin_space("grmod_kx")
    m2 = amin(G, G.support("k[x]"))
    ok = m == want and not m.is_finite() and lam.not_open_at == SymbolicSet(frozenset(["b"])) and m2 == kx_support()
    return ok, (
        f"AMin B = {B.view.describe(m)}; Λ(b) open: {lam.all_open}; "
        f"AMin k[x] = {G.view.describe(m2)}"
    )


def _expected_violation(rep: fl.TheoremReport) -> bool:
    c = rep.check("alexchar")
    others = [x for x in rep.checks if x.key not in ("alexchar", "dimalexc", "ad")]
    return (
        not c.holds and c.witnesses == ["b"] and rep.ok
        and all(x.holds for x in others)
    )


def c6_theorems() -> tuple[bool, str]:
    count = 0
    for P in _posets():
        A = finite_atom_space(fs.alexandroff_space(P))
        rep = fl.verify_theorems(A)
        if not all(c.holds for c in rep.checks):
            bad = [c.key for c in rep.checks if not c.holds]
            return False, f"finite model {sorted(P.pairs())} fails {bad}"
        count += 1
    for name in ("grmod_kx", "goodearl"):
        A = builtin_space(name)
        rep = fl.verify_theorems(A, name)
        if not _expected_violation(rep):
            return False, f"{name}: unexpected verdicts {[(c.key, c.holds, c.witnesses) for c in rep.checks]}"
        C = complete(A)
        crep = fl.verify_theorems(C, name + "+completion")
        if not all(c.holds for c in crep.checks):
            return False, f"completion of {name} fails {[c.key for c in crep.checks if not c.holds]}"
        S, SC = A.view.schema, C.view.schema
        for p in A.view.sample(A.points):
            if ts.minimal_open_symbolic(S, p) != ts.minimal_open_symbolic(SC, p):
                return False, f"completion of {name} changes the order at {A.view.name(p)}"
    return True, f"{count} finite models; alexchar violated exactly at b on grmod_kx, goodearl; completions pass"


def _random_matrix(R, rng: random.Random, m: int, n: int):
    if isinstance(R, PolyRingModP):
        return [[R.random_element(rng, degree=2) for _ in range(n)] for _ in range(m)]
    return [[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)]


def c7_snf(count: int = 500) -> tuple[bool, str]:
    rng = random.Random(SEED)
    rings = [ZZ, PolyRingModP(2), PolyRingModP(3), PolyRingModP(5)]
    for k in range(count):
        R = ZZ if k % 2 == 0 else rings[1 + (k // 2) % 3]
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        A = _random_matrix(R, rng, m, n)
        res = snf(R, A)
        problems = verify(R, A, res)
        if problems:
            return False, f"{R} {A}: {problems}"
        if res.invariant_factors != minor_gcd_factors(R, A):
            return False, f"{R} {A}: factors disagree with the minor-gcd oracle"
    return True, f"{count} matrices over Z, F2[x], F3[x], F5[x]"


def c8_monoform() -> tuple[bool, str]:
    count = 0
    for shape in pm.abelian_group_shapes(pm.MONOFORM_BOUND):
        M = pm.PresentedModule.from_factors(ZZ, 0, shape)
        if pm.classify(M).monoform != pm.monoform_bruteforce(M):
            return False, f"disagreement on Z-module with invariant factors {shape}"
        count += 1
    return True, f"{count} groups of order <= {pm.MONOFORM_BOUND}"


def random_module(rng: random.Random) -> pm.PresentedModule:
    R = rng.choice([ZZ, ZZ, PolyRingModP(2), PolyRingModP(3)])
    n, k = rng.randint(0, 3), rng.randint(0, 3)
    if isinstance(R, PolyRingModP):
        rows = [[R.random_element(rng, degree=1) for _ in range(k)] for _ in range(n)]
    else:
        rows = [[rng.randint(-12, 12) for _ in range(k)] for _ in range(n)]
    return pm.PresentedModule.build(R, n, rows)


def c9_cross_module(count: int = 100) -> tuple[bool, str]:
    rng = random.Random(SEED + 9)
    for _ in range(count):
        M = random_module(rng)
        R = M.ring
        an = pm.analyze(M)
        A = pm.spec_model(R)
        g = fl.gkdim(A, an.asupp)
        if g != an.gkdim:
            return False, f"{M.to_json()}: algebraic gkdim {an.gkdim}, filtration {g}"
        if not an.amin.is_finite() or not an.aass.is_finite():
            return False, f"{M.to_json()}: AMin or AAss infinite"
        meet = A.points
        for p in an.aass.elements():
            meet = meet & pm.lambda_point(R, p)
        if meet != an.lam:
            return False, f"{M.to_json()}: Λ(M) = {an.describe(an.lam)} but the meet is {an.describe(meet)}"
    return True, f"{count} random modules"


def c10_zero() -> tuple[bool, str]:
    vals = []
    for R in (ZZ, PolyRingModP(2)):
        an = pm.analyze(pm.zero_module(R))
        vals.append((an.gkdim, an.kdim, an.dim, an.adim))
    return all(v == (-1, -1, -1, -1) for v in vals), f"(gkdim, kdim, dim, adim) = {vals[0]}"


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    limit: float
    scopes: tuple[str, ...]
    run: Callable[[], tuple[bool, str]]


CRITERIA = [
    Criterion(1, "adjunction", 10, ("finite",), c1_adjunction),
    Criterion(2, "kolmogorov quotient", 5, ("finite",), c2_kolmogorov),
    Criterion(3, "dimension equalities", 30, ("finite",), c3_dimensions),
    Criterion(4, "grmod_kx fixed point", 1, ("symbolic",), c4_grmod),
    Criterion(5, "minimal atoms", 1, ("symbolic",), c5_minimal_atoms),
    Criterion(6, "theorem verifier", 10, ("finite", "symbolic"), c6_theorems),
    Criterion(7, "smith normal form", 10, ("ring",), c7_snf),
    Criterion(8, "monoform oracle", 60, ("ring",), c8_monoform),
    Criterion(9, "cross-module consistency", 10, ("ring",), c9_cross_module),
    Criterion(10, "zero module", 1, ("ring",), c10_zero),
]

SCOPES = ("all", "finite", "symbolic", "ring")


def run_criterion(c: Criterion) -> CriterionResult:
    t = time.perf_counter()
    try:
        passed, detail = c.run()
    except Exception as e:  # a crash is a failed criterion, reported with its cause
        passed, detail = False, f"raised {type(e).__name__}: {e}"
    return CriterionResult(c.number, c.title, passed, detail, time.perf_counter() - t, c.limit)


def run_scope(scope: str = "all") -> list[CriterionResult]:
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}")
    return [run_criterion(c) for c in CRITERIA if scope == "all" or scope in c.scopes]
