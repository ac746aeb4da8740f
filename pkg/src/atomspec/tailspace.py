"""Symbolic spaces: finitely many named points plus one indexed family x_i.

The topology is generated by descriptor families:

* ``singletons``  every {x_i}
* ``tail``        {b} ∪ {x_i : i >= n} (or ``i <= n``) for every n in the domain
* ``cone``        {g} ∪ all x_i
* ``minimal``     {b} ∪ {x_i : i in a fixed finite set}; the Alexandroff
                  completion adds these for named points whose U_b was not open

together with the whole space.  A ``TailSpace`` is a schema restricted to a
carrier subset (trace topology), which is how open removal is modelled.

Points are addressed as ``str`` (named) or ``int`` (index into the family).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

from .errors import InputError, NonUniformError
from .symbolic import IndexSet, Point, SymbolicSet

KINDS = ("singletons", "tail", "cone", "minimal")
PROBE_OFFSETS = (3, 4, 9)  # distances beyond the interesting window; three probes per end


@dataclass(frozen=True)
class Descriptor:
    kind: str
    point: str | None = None
    indices: tuple[int, ...] = ()

    def to_json(self, direction: str | None) -> dict:
        d: dict = {"kind": self.kind}
        if self.point is not None:
            d["point"] = self.point
        if self.kind == "tail":
            d["dir"] = direction
        if self.kind == "minimal":
            d["indices"] = list(self.indices)
        return d


@dataclass(frozen=True)
class TailSchema:
    named: tuple[str, ...]
    domain: str  # "Z" or "N"
    family: str
    descriptors: tuple[Descriptor, ...]
    direction: str | None = None  # tail direction shared by every tail descriptor
    label: Callable[[int], str] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.domain not in ("Z", "N"):
            raise InputError(f"domain must be 'Z' or 'N', not {self.domain!r}")
        if len(set(self.named)) != len(self.named):
            raise InputError("duplicate named points")
        for d in self.descriptors:
            if d.kind not in KINDS:
                raise InputError(f"unknown descriptor kind {d.kind!r}")
            if d.kind == "singletons":
                continue
            if d.point not in self.named:
                raise InputError(f"descriptor {d.kind!r} references undeclared point {d.point!r}")
            if d.kind == "tail" and self.direction not in ("geq", "leq"):
                raise InputError("tail descriptors need a direction of 'geq' or 'leq'")
            if d.kind == "minimal" and any(i not in self.domain_set for i in d.indices):
                raise InputError(f"minimal descriptor at {d.point!r} uses indices outside the domain")

    @property
    def domain_set(self) -> IndexSet:
        return IndexSet.everything() if self.domain == "Z" else IndexSet.naturals()

    @property
    def whole(self) -> SymbolicSet:
        return SymbolicSet(frozenset(self.named), self.domain_set)

    @property
    def has_singletons(self) -> bool:
        return any(d.kind == "singletons" for d in self.descriptors)

    def at(self, p: str, kind: str | None = None) -> list[Descriptor]:
        return [d for d in self.descriptors if d.point == p and (kind is None or d.kind == kind)]

    def point_name(self, p: Point) -> str:
        if isinstance(p, str):
            return p
        return self.label(p) if self.label else f"{self.family}_{p}"

    def describe(self, A: SymbolicSet) -> str:
        return A.describe(self.family, self.label)

    def parse_point(self, token: str) -> Point:
        if token in self.named:
            return token
        rest = token[len(self.family):] if token.startswith(self.family) else None
        if rest is not None:
            rest = rest.lstrip("_")
            try:
                i = int(rest)
            except ValueError:
                i = None
            if i is not None and i in self.domain_set:
                return i
        raise InputError(f"unknown point {token!r}")

    def check_point(self, p: Point) -> Point:
        if isinstance(p, str):
            if p not in self.named:
                raise InputError(f"unknown point {p!r}")
        elif isinstance(p, bool) or not isinstance(p, int) or p not in self.domain_set:
            raise InputError(f"index {p!r} outside the domain {self.domain}")
        return p

    # descriptor sets

    def tail(self, n: int) -> IndexSet:
        return IndexSet.tail(n, self.direction) & self.domain_set

    def tails_meet(self) -> IndexSet:
        """Intersection of all tails over the domain."""
        if self.direction == "leq" and self.domain == "N":
            return IndexSet.finite([0])
        return IndexSet.empty()

    def largest_tail_union(self, X: IndexSet) -> IndexSet:
        """Union of all tails contained in X."""
        D = self.domain_set
        missing = D - X
        if not missing:
            return D
        if self.direction == "geq":
            if missing.high:
                return IndexSet.empty()
            return self.tail(missing.max() + 1)
        if missing.low:
            return IndexSet.empty()
        return self.tail(missing.min() - 1)

    def to_json(self) -> dict:
        return {
            "named": list(self.named),
            "domain": self.domain,
            "family": self.family,
            "descriptors": [d.to_json(self.direction) for d in self.descriptors],
        }


def make_schema(
    named: Sequence[str],
    domain: str,
    family: str,
    descriptors: Iterable[Descriptor],
    direction: str | None = None,
    label: Callable[[int], str] | None = None,
    check: bool = True,
) -> TailSchema:
    S = TailSchema(tuple(named), domain, family, tuple(descriptors), direction, label)
    if check:
        check_intersections(S)
    return S


def load_schema(path_or_doc) -> TailSchema:
    doc = path_or_doc
    if not isinstance(doc, dict):
        with open(doc) as fh:
            doc = json.load(fh)
    for key in ("named", "domain", "family", "descriptors"):
        if key not in doc:
            raise InputError(f"schema file is missing field {key!r}")
    directions = set()
    descs = []
    for k, d in enumerate(doc["descriptors"]):
        if "kind" not in d:
            raise InputError(f"descriptors[{k}] has no 'kind'")
        if d["kind"] == "tail":
            directions.add(d.get("dir"))
        descs.append(Descriptor(d["kind"], d.get("point"), tuple(d.get("indices", ()))))
    if len(directions) > 1:
        raise InputError("a schema allows only one tail direction")
    return make_schema(doc["named"], doc["domain"], doc["family"], descs, directions.pop() if directions else None)


def builtin_model(name: str, label: str | None = None) -> TailSchema:
    if name == "grmod_kx":
        # simples S_j (j in Z) and the atom b of k[x]; ASupp x^n k[x] = {b} ∪ {s_j : j <= n}
        return make_schema(
            ["b"], "Z", "s",
            [Descriptor("singletons"), Descriptor("tail", "b")],
            direction="leq",
        )
    if name == "goodearl":
        # simples A/m_n (n in N) and b = atom of B; ASupp t^n B = {b} ∪ {m_i : i >= n}
        return make_schema(
            ["b"], "N", "m",
            [Descriptor("singletons"), Descriptor("tail", "b")],
            direction="geq",
        )
    if name == "spec_pid":
        return make_schema(
            ["g"], "N", label or "m",
            [Descriptor("singletons"), Descriptor("cone", "g")],
        )
    raise InputError(f"unknown builtin model {name!r}")


def _probe_indices(S: TailSchema) -> list[int]:
    base = [0, 1, 2, 5]
    if S.domain == "Z":
        base += [-1, -2, -5]
    return base


def _descriptor_instances(S: TailSchema, d: Descriptor) -> list[SymbolicSet]:
    if d.kind == "singletons":
        return [SymbolicSet(frozenset(), IndexSet.finite([i])) for i in _probe_indices(S)]
    if d.kind == "tail":
        return [SymbolicSet(frozenset([d.point]), S.tail(n)) for n in _probe_indices(S)]
    if d.kind == "cone":
        return [SymbolicSet(frozenset([d.point]), S.domain_set)]
    return [SymbolicSet(frozenset([d.point]), IndexSet.finite(d.indices))]


def check_intersections(S: TailSchema) -> None:
    """Reject schemas where two descriptor sets meet in a non-open set (probed parameters)."""
    for a in range(len(S.descriptors)):
        for b in range(a, len(S.descriptors)):
            for A in _descriptor_instances(S, S.descriptors[a]):
                for B in _descriptor_instances(S, S.descriptors[b]):
                    meet = A & B
                    if meet and not is_open(S, meet):
                        raise InputError(
                            f"descriptors {S.descriptors[a].kind}/{S.descriptors[b].kind} "
                            f"meet in the non-open set {S.describe(meet)}"
                        )


# topology queries on the whole space or a carrier (trace topology)


def _fits(S: TailSchema, Ap: SymbolicSet) -> tuple[set[str], IndexSet]:
    """Named points having a basic neighbourhood inside Ap, and indices covered likewise."""
    named: set[str] = set()
    covered = IndexSet.empty()
    X = Ap.indexed
    D = S.domain_set
    for d in S.descriptors:
        if d.kind == "singletons":
            covered = covered | (X & D)
            continue
        if d.point not in Ap.named:
            continue
        if d.kind == "tail":
            t = S.largest_tail_union(X)
        elif d.kind == "cone":
            t = D if D <= X else None
        else:
            I = IndexSet.finite(d.indices)
            t = I if I <= X else None
        if t is None or (d.kind == "tail" and not t):
            continue
        named.add(d.point)
        covered = covered | t
    return named, covered


def is_open(S: TailSchema, A: SymbolicSet, carrier: SymbolicSet | None = None) -> bool:
    C = S.whole if carrier is None else carrier
    if not A <= S.whole:
        raise InputError(f"set {S.describe(A)} references points outside the schema")
    if not A <= C:
        raise InputError(f"set {S.describe(A)} is not inside the carrier")
    Ap = A | (S.whole - C)
    if Ap == S.whole:
        return True
    named, covered = _fits(S, Ap)
    return A.named <= named and A.indexed <= covered


def minimal_open_symbolic(S: TailSchema, p: Point, carrier: SymbolicSet | None = None) -> SymbolicSet:
    """U_p: intersection of every basic open containing p."""
    S.check_point(p)
    C = S.whole if carrier is None else carrier
    if p not in C:
        raise InputError(f"point {S.point_name(p)} is not in the carrier")
    U = S.whole
    if isinstance(p, str):
        for d in S.at(p):
            if d.kind == "tail":
                part = S.tails_meet()
            elif d.kind == "cone":
                part = S.domain_set
            else:
                part = IndexSet.finite(d.indices)
            U = U & SymbolicSet(frozenset([p]), part)
    else:
        for d in S.descriptors:
            if d.kind == "singletons":
                B = SymbolicSet(frozenset(), IndexSet.finite([p]))
            elif d.kind == "tail":
                # the smallest tail containing p is the one starting at p
                B = SymbolicSet(frozenset([d.point]), S.tail(p))
            elif d.kind == "cone":
                B = SymbolicSet(frozenset([d.point]), S.domain_set)
            elif p in d.indices:
                B = SymbolicSet(frozenset([d.point]), IndexSet.finite(d.indices))
            else:
                continue
            U = U & B
    return U & C


def lambda_symbolic(S: TailSchema, p: Point, carrier: SymbolicSet | None = None) -> SymbolicSet:
    """Λ(p) = {q : p <= q}.  By definition of the specialization order this is U_p."""
    return minimal_open_symbolic(S, p, carrier)


def order_leq_symbolic(S: TailSchema, p: Point, q: Point, carrier: SymbolicSet | None = None) -> bool:
    S.check_point(q)
    return q in minimal_open_symbolic(S, p, carrier)


# index-uniform evaluation over the family


def interesting_indices(S: TailSchema, sets: Iterable[SymbolicSet] = (), around: Iterable[int] = ()) -> tuple[int, int]:
    pts = {0, -1} if S.domain == "Z" else {0}
    for d in S.descriptors:
        pts.update(d.indices)
    for A in sets:
        lo, hi = A.indexed.span()
        pts.update((lo, hi))
    pts.update(around)
    lo, hi = min(pts) - 2, max(pts) + 2
    if S.domain == "N":
        lo = 0
    return lo, hi


@dataclass(frozen=True)
class Sample:
    """Representative points of a set: its named points, a window, and end probes."""

    named: tuple[str, ...]
    window: tuple[int, ...]
    lo: int
    hi: int
    low_probes: tuple[int, ...]
    high_probes: tuple[int, ...]

    def points(self) -> list[Point]:
        return list(self.named) + list(self.window) + list(self.low_probes) + list(self.high_probes)


def sample(S: TailSchema, A: SymbolicSet, carrier: SymbolicSet | None = None, around: Iterable[int] = ()) -> Sample:
    C = S.whole if carrier is None else carrier
    lo, hi = interesting_indices(S, [A, C], around)
    window = tuple(i for i in range(lo, hi + 1) if i in A.indexed)
    high = tuple(hi + k for k in PROBE_OFFSETS if hi + k in A.indexed)
    low = tuple(lo - k for k in PROBE_OFFSETS if lo - k in A.indexed) if S.domain == "Z" else ()
    return Sample(tuple(sorted(A.named, key=S.named.index)), window, lo, hi, low, high)


def select(
    S: TailSchema,
    pred: Callable[[Point], bool],
    within: SymbolicSet,
    carrier: SymbolicSet | None = None,
    around: Iterable[int] = (),
) -> SymbolicSet:
    """The points of ``within`` satisfying ``pred``, assuming uniformity beyond the window."""
    sm = sample(S, within, carrier, around)
    named = frozenset(p for p in sm.named if pred(p))
    values = {i: (i in within.indexed) and pred(i) for i in range(sm.lo, sm.hi + 1)}

    def end(probes: tuple[int, ...], side: str) -> bool:
        if not probes:
            return False
        got = {pred(i) for i in probes}
        if len(got) != 1:
            raise NonUniformError(f"predicate is not uniform on the {side} end of {S.family}")
        return got.pop()

    low = end(sm.low_probes, "low") if S.domain == "Z" else False
    high = end(sm.high_probes, "high")
    idx = IndexSet.from_values(low, high, values) & within.indexed
    return SymbolicSet(named, idx)


def class_witness(S: TailSchema, A: SymbolicSet) -> str:
    return S.describe(A)


@dataclass(frozen=True)
class AlexandroffVerdict:
    holds: bool
    witnesses: SymbolicSet = SymbolicSet()

    def __bool__(self) -> bool:
        return self.holds


def is_alexandroff(S: TailSchema, carrier: SymbolicSet | None = None) -> AlexandroffVerdict:
    """Λ(p) open for every point; failures are returned as a symbolic witness set."""
    C = S.whole if carrier is None else carrier
    bad = select(S, lambda p: not is_open(S, lambda_symbolic(S, p, C), C), C, C)
    return AlexandroffVerdict(not bad, bad)


def alexandroff_completion(S: TailSchema) -> TailSchema:
    """Adjoin U_b as a basic open for each named point b whose U_b is not open."""
    extra = []
    for b in S.named:
        U = minimal_open_symbolic(S, b)
        if not is_open(S, U):
            if not U.indexed.is_finite():
                raise NonUniformError(f"U_{b} has an infinite indexed part; cannot adjoin it")
            extra.append(Descriptor("minimal", b, tuple(U.indexed)))
    if not extra:
        return S
    return make_schema(S.named, S.domain, S.family, S.descriptors + tuple(extra), S.direction, S.label)
