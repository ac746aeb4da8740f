"""Finitely presented modules over Z or F_p[x] and their atom-theoretic invariants."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from math import prod

from .. import filtration as fl
from .. import tailspace as ts
from ..errors import InputError
from ..spectrum import AtomSpace, amin, tail_atom_space
from ..symbolic import IndexSet, Point, SymbolicSet
from .rings import ZZ, IntegerRing, ring_from_json, ring_to_json
from .snf import snf

GENERIC = "(0)"
MONOFORM_BOUND = 256


@dataclass(frozen=True)
class PresentedModule:
    """R^n modulo the column span of an n-row relation matrix."""

    ring: object
    generators: int
    relations: tuple[tuple, ...]

    def __post_init__(self):
        if self.generators < 0:
            raise InputError("generator count must be non-negative")
        if len(self.relations) != self.generators:
            raise InputError(f"relation matrix has {len(self.relations)} rows, expected {self.generators}")
        if len({len(r) for r in self.relations}) > 1:
            raise InputError("relation matrix rows differ in length")

    @classmethod
    def build(cls, R, generators: int, relations) -> PresentedModule:
        rows = [tuple(R.element(x) for x in row) for row in relations]
        if generators and not rows:
            rows = [()] * generators
        return cls(R, generators, tuple(rows))

    @classmethod
    def from_factors(cls, R, free_rank: int, factors) -> PresentedModule:
        """R^r ⊕ ⊕ R/(d_i) with a diagonal presentation."""
        factors = list(factors)
        n = free_rank + len(factors)
        rows = []
        for i in range(n):
            rows.append(tuple(factors[j] if i == free_rank + j else R.zero for j in range(len(factors))))
        return cls(R, n, tuple(rows))

    def to_json(self) -> dict:
        return {
            "ring": ring_to_json(self.ring),
            "generators": self.generators,
            "relations": [[self.ring.to_json(x) for x in row] for row in self.relations],
        }


def load_module(path_or_doc) -> PresentedModule:
    doc = path_or_doc
    if not isinstance(doc, dict):
        try:
            with open(doc) as fh:
                doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise InputError(f"{path_or_doc}: invalid JSON at line {e.lineno}: {e.msg}") from None
    for key in ("ring", "generators"):
        if key not in doc:
            raise InputError(f"module file is missing field {key!r}")
    R = ring_from_json(doc["ring"])
    n = doc["generators"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise InputError("'generators' must be an integer")
    return PresentedModule.build(R, n, doc.get("relations", []))


@dataclass(frozen=True)
class Decomposition:
    free_rank: int
    factors: tuple  # non-unit invariant factors, divisibility chain

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.factors


def decompose(M: PresentedModule) -> Decomposition:
    R = M.ring
    res = snf(R, [list(r) for r in M.relations])
    facs = tuple(d for d in res.invariant_factors if not R.is_unit(d))
    return Decomposition(M.generators - res.rank, facs)


def prime_divisors(R, factors) -> list:
    """Canonical primes dividing some factor, ordered by their spectrum index."""
    seen = {}
    for d in factors:
        for p, _ in R.factor(d):
            seen[p] = R.prime_index(p)
    return sorted(seen, key=seen.get)


# the spectrum of the ring


@lru_cache(maxsize=None)
def spec_schema(R) -> ts.TailSchema:
    return ts.make_schema(
        [GENERIC], "N", "p",
        [ts.Descriptor("singletons"), ts.Descriptor("cone", GENERIC)],
        label=lambda i: f"({R.fmt(R.prime_at(i))})",
    )


def spec_model(R, maximal_bound: int = 8) -> AtomSpace:
    """Generic point (0) below every maximal point (p), primes indexed canonically."""
    if maximal_bound < 1:
        raise InputError("maximal_bound must be at least 1")
    return tail_atom_space(spec_schema(R))


def spec_preview(R, maximal_bound: int) -> list[str]:
    """Names of the generic point and the first ``maximal_bound`` maximal points."""
    return [GENERIC] + [f"({R.fmt(R.prime_at(i))})" for i in range(maximal_bound)]


def point_of(R, alpha) -> Point:
    """Spectrum point of a ring element: zero gives (0), a prime gives its index."""
    if R.is_zero(alpha):
        return GENERIC
    if not R.is_prime(alpha):
        raise InputError(f"{R.fmt(alpha)} is not prime")
    return R.prime_index(R.canonical(alpha))


def prime_of(R, point: Point):
    return R.zero if point == GENERIC else R.prime_at(point)


def point_name(R, point: Point) -> str:
    return spec_schema(R).point_name(point)


# t_alpha and Lambda(M)


def _strip(R, d, p):
    while R.divides(p, d):
        d = R.exact_div(d, p)
    return d


def _pack(R, free_rank: int, parts) -> PresentedModule:
    facs = sorted((R.canonical(d) for d in parts if not R.is_unit(d)), key=R.size)
    return PresentedModule.from_factors(R, free_rank, facs)


def t_alpha(M: PresentedModule, alpha) -> PresentedModule:
    """Largest submodule whose support avoids the closure of alpha."""
    R = M.ring
    point_of(R, alpha)
    dec = decompose(M)
    if R.is_zero(alpha):
        return _pack(R, 0, dec.factors)
    p = R.canonical(alpha)
    return _pack(R, 0, (_strip(R, d, p) for d in dec.factors))


def quotient_by_t_alpha(M: PresentedModule, alpha) -> PresentedModule:
    R = M.ring
    point_of(R, alpha)
    dec = decompose(M)
    if R.is_zero(alpha):
        return _pack(R, dec.free_rank, ())
    p = R.canonical(alpha)
    return _pack(R, dec.free_rank, (R.exact_div(d, _strip(R, d, p)) for d in dec.factors))


def lambda_M(M: PresentedModule) -> SymbolicSet:
    """{alpha : t_alpha(M) = 0}.  Primes not dividing the torsion all behave alike."""
    R = M.ring
    dec = decompose(M)
    named = frozenset([GENERIC]) if decompose(t_alpha(M, R.zero)).is_zero else frozenset()
    candidates = prime_divisors(R, dec.factors)
    good = [R.prime_index(p) for p in candidates if decompose(t_alpha(M, p)).is_zero]
    # any other prime q leaves t_q(M) equal to the whole torsion part
    others = not dec.factors
    idx = IndexSet.naturals() if others else IndexSet.finite(good)
    return SymbolicSet(named, idx)


def lambda_point(R, point: Point) -> SymbolicSet:
    """Λ(alpha) on the spectrum model."""
    return ts.lambda_symbolic(spec_schema(R), point)


# analysis


@dataclass(frozen=True)
class Classification:
    simple: bool
    monoform: bool
    compressible: bool
    critical: int | None
    atomic_critical: int | None

    def summary(self) -> str:
        words = []
        if self.simple:
            words.append("simple")
        words.append("monoform" if self.monoform else "not monoform")
        words.append("compressible" if self.compressible else "not compressible")
        words.append(f"{self.critical}-critical" if self.critical is not None else "not critical")
        return ", ".join(words)


def classify(M: PresentedModule) -> Classification:
    R = M.ring
    dec = decompose(M)
    simple = dec.free_rank == 0 and len(dec.factors) == 1 and R.is_prime(dec.factors[0])
    free_cyclic = dec.free_rank == 1 and not dec.factors
    monoform = simple or free_cyclic
    critical = 0 if simple else 1 if free_cyclic else None
    return Classification(simple, monoform, monoform, critical, critical)


@dataclass(frozen=True)
class ModuleAnalysis:
    module: PresentedModule
    free_rank: int
    factors: tuple
    asupp: SymbolicSet
    aass: SymbolicSet
    amin: SymbolicSet
    gkdim: int
    kdim: int
    dim: int | None
    adim: int
    lam: SymbolicSet
    classification: Classification

    def describe(self, A: SymbolicSet) -> str:
        return spec_schema(self.module.ring).describe(A)

    def to_json(self) -> dict:
        R = self.module.ring
        return {
            "ring": ring_to_json(R),
            "free_rank": self.free_rank,
            "invariant_factors": [R.to_json(d) for d in self.factors],
            "asupp": self.describe(self.asupp),
            "aass": self.describe(self.aass),
            "amin": self.describe(self.amin),
            "lambda": self.describe(self.lam),
            "gkdim": self.gkdim,
            "kdim": self.kdim,
            "dim": self.dim,
            "adim": self.adim,
            "classification": {
                "simple": self.classification.simple,
                "monoform": self.classification.monoform,
                "compressible": self.classification.compressible,
                "critical": self.classification.critical,
                "atomic_critical": self.classification.atomic_critical,
            },
        }


def analyze(M: PresentedModule) -> ModuleAnalysis:
    R = M.ring
    dec = decompose(M)
    A = spec_model(R)
    primes = IndexSet.finite(R.prime_index(p) for p in prime_divisors(R, dec.factors))
    if dec.free_rank:
        asupp = A.points
        aass = SymbolicSet(frozenset([GENERIC]), primes)
        kdim = 1
    else:
        asupp = SymbolicSet(frozenset(), primes)
        aass = asupp
        kdim = 0 if dec.factors else -1
    sub = AtomSpace(A.view.restrict(asupp))
    F = fl.gabriel_filtration(sub)
    return ModuleAnalysis(
        module=M,
        free_rank=dec.free_rank,
        factors=dec.factors,
        asupp=asupp,
        aass=aass,
        amin=amin(A, asupp),
        gkdim=kdim,
        kdim=kdim,
        dim=fl.dim_open(sub, sub.points, F),
        adim=fl.adim(sub, sub.points),
        lam=lambda_M(M),
        classification=classify(M),
    )


def zero_module(R=ZZ) -> PresentedModule:
    return PresentedModule(R, 0, ())


# brute-force monoform oracle over finite abelian groups


@dataclass(frozen=True)
class MonoformWitness:
    submodule: frozenset  # N
    common_order: int  # order of a cyclic group embedded in both M and M/N
    in_module: tuple
    in_quotient: tuple


class _Group:
    def __init__(self, mods: tuple[int, ...]):
        self.mods = mods
        self.zero = tuple(0 for _ in mods)
        self.elements = list(itertools.product(*(range(d) for d in mods)))

    def add(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.mods))

    def times(self, k: int, a):
        return tuple((k * x) % d for x, d in zip(a, self.mods))

    def order(self, a, inside: frozenset | None = None) -> int:
        """Least k >= 1 with k*a in ``inside`` (the zero subgroup by default)."""
        target = inside or frozenset([self.zero])
        k, x = 1, a
        while x not in target:
            k, x = k + 1, self.add(x, a)
        return k

    def extend(self, H: frozenset, g) -> frozenset:
        """Subgroup generated by H and g."""
        out = set(H)
        frontier = list(H)
        while frontier:
            x = frontier.pop()
            y = self.add(x, g)
            if y not in out:
                out.add(y)
                frontier.append(y)
        return frozenset(out)

    def subgroups(self):
        """Every subgroup, cyclic ones first (breadth-first over generator count)."""
        start = frozenset([self.zero])
        seen = {start}
        queue = [start]
        yield start
        while queue:
            nxt = []
            for H in queue:
                for g in self.elements:
                    if g in H:
                        continue
                    K = self.extend(H, g)
                    if K not in seen:
                        seen.add(K)
                        nxt.append(K)
                        yield K
            queue = nxt


def _finite_group(M: PresentedModule, bound: int) -> _Group:
    if not isinstance(M.ring, IntegerRing):
        raise InputError("the brute-force oracle works over Z only")
    dec = decompose(M)
    if dec.free_rank:
        raise InputError("the brute-force oracle needs a finite (torsion) module")
    size = prod(dec.factors)
    if size > bound:
        raise InputError(f"module of order {size} exceeds the bound {bound}")
    return _Group(tuple(dec.factors))


def monoform_witness(M: PresentedModule, bound: int = MONOFORM_BOUND) -> MonoformWitness | None:
    """A nonzero N with a nonzero submodule of M isomorphic to one of M/N, if any.

    A common nonzero submodule contains a common cyclic one, and cyclic groups
    are classified by their order, so comparing element orders in M and cosets
    in M/N decides the question.
    """
    G = _finite_group(M, bound)
    orders_M = {}
    for g in G.elements:
        if g != G.zero:
            orders_M.setdefault(G.order(g), g)
    for N in G.subgroups():
        if len(N) == 1:
            continue
        for x in G.elements:
            if x in N:
                continue
            k = G.order(x, N)
            if k in orders_M:
                return MonoformWitness(N, k, orders_M[k], x)
    return None


def monoform_bruteforce(M: PresentedModule, bound: int = MONOFORM_BOUND) -> bool:
    G = _finite_group(M, bound)
    if len(G.elements) == 1:
        return False  # the zero module is not monoform
    return monoform_witness(M, bound) is None


def abelian_group_shapes(max_order: int):
    """Invariant-factor lists d_1 | d_2 | ... with product <= max_order (d_1 > 1)."""

    def extend(shape, size):
        yield tuple(shape)
        last = shape[-1] if shape else 1
        step = last
        d = last if shape else 2
        while size * d <= max_order:
            if d > 1 and d % step == 0:
                yield from extend(shape + [d], size * d)
            d += step if shape else 1

    yield from extend([], 1)
