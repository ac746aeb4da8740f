"""Atom spaces: a finite or symbolic space together with named supports.

Both space kinds are wrapped in a view with the same surface, and all point
sets crossing that surface are ``SymbolicSet`` values (finite spaces simply
never use the indexed part).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import finspace as fs
from . import tailspace as ts
from .errors import InputError
from .order_core import load_preorder
from .symbolic import IndexSet, Point, SymbolicSet


class FiniteView:
    kind = "finite"

    def __init__(self, space: fs.FinSpace):
        self.space = space
        self._pre = fs.specialization_preorder(space)
        self._up = {p: SymbolicSet(self._pre.subset(self._pre.up[i])) for i, p in enumerate(space.points)}

    @property
    def points(self) -> SymbolicSet:
        return SymbolicSet(frozenset(self.space.points))

    def check(self, p: Point) -> Point:
        if not isinstance(p, str):
            raise InputError(f"unknown point {p!r}")
        self.space.index(p)
        return p

    def _check_set(self, A: SymbolicSet) -> None:
        if A.indexed or not A.named <= set(self.space.points):
            raise InputError(f"set {self.describe(A)} is not inside the space")

    def is_open(self, A: SymbolicSet) -> bool:
        self._check_set(A)
        return self.space.is_open(A.named)

    def minimal_open(self, p: Point) -> SymbolicSet:
        self.check(p)
        return self._up[p]

    def leq(self, p: Point, q: Point) -> bool:
        self.check(q)
        return q in self.minimal_open(p)

    def restrict(self, keep: SymbolicSet) -> FiniteView:
        return FiniteView(self.space.subspace(keep.named))

    def select(self, pred: Callable[[Point], bool], within: SymbolicSet, around: Iterable[int] = ()) -> SymbolicSet:
        return SymbolicSet(frozenset(p for p in self.space.points if p in within and pred(p)))

    def sample(self, A: SymbolicSet, around: Iterable[int] = ()) -> list[Point]:
        return [p for p in self.space.points if p in A]

    def name(self, p: Point) -> str:
        return str(p)

    def describe(self, A: SymbolicSet) -> str:
        return "{" + ", ".join(p for p in self.space.points if p in A.named) + "}"

    def parse_point(self, token: str) -> Point:
        return self.check(token)

    def is_alexandroff(self) -> ts.AlexandroffVerdict:
        return ts.AlexandroffVerdict(True)

    def order(self):
        return self._pre


class TailView:
    kind = "tail"

    def __init__(self, schema: ts.TailSchema, carrier: SymbolicSet | None = None):
        self.schema = schema
        self.carrier = schema.whole if carrier is None else carrier

    @property
    def points(self) -> SymbolicSet:
        return self.carrier

    def check(self, p: Point) -> Point:
        self.schema.check_point(p)
        if p not in self.carrier:
            raise InputError(f"point {self.name(p)} was removed from this space")
        return p

    def is_open(self, A: SymbolicSet) -> bool:
        return ts.is_open(self.schema, A, self.carrier)

    def minimal_open(self, p: Point) -> SymbolicSet:
        self.check(p)
        return ts.minimal_open_symbolic(self.schema, p, self.carrier)

    def leq(self, p: Point, q: Point) -> bool:
        self.check(q)
        return q in self.minimal_open(p)

    def restrict(self, keep: SymbolicSet) -> TailView:
        return TailView(self.schema, self.carrier & keep)

    def select(self, pred: Callable[[Point], bool], within: SymbolicSet, around: Iterable[int] = ()) -> SymbolicSet:
        return ts.select(self.schema, pred, within & self.carrier, self.carrier, around)

    def sample(self, A: SymbolicSet, around: Iterable[int] = ()) -> list[Point]:
        return ts.sample(self.schema, A & self.carrier, self.carrier, around).points()

    def name(self, p: Point) -> str:
        return self.schema.point_name(p)

    def describe(self, A: SymbolicSet) -> str:
        return self.schema.describe(A)

    def parse_point(self, token: str) -> Point:
        return self.check(self.schema.parse_point(token))

    def is_alexandroff(self) -> ts.AlexandroffVerdict:
        return ts.is_alexandroff(self.schema, self.carrier)


View = FiniteView | TailView


def _around(*points: Point) -> list[int]:
    return [p for p in points if isinstance(p, int)]


@dataclass(frozen=True)
class Support:
    points: SymbolicSet
    noetherian: bool = False
    aass: SymbolicSet | None = None


@dataclass(frozen=True)
class AtomSpace:
    view: View
    supports: dict[str, Support] = field(default_factory=dict)

    def __post_init__(self):
        for label, s in self.supports.items():
            if not self.view.is_open(s.points):
                raise InputError(f"support {label!r} = {self.view.describe(s.points)} is not open")
            if s.aass is not None and not s.aass <= s.points:
                raise InputError(f"associated atoms of {label!r} are not inside its support")

    @property
    def points(self) -> SymbolicSet:
        return self.view.points

    def support(self, label: str) -> SymbolicSet:
        try:
            return self.supports[label].points
        except KeyError:
            raise InputError(f"unknown support {label!r}") from None


def finite_atom_space(space: fs.FinSpace, supports: dict[str, Support] | None = None) -> AtomSpace:
    return AtomSpace(FiniteView(space), supports or {})


def tail_atom_space(schema: ts.TailSchema, supports: dict[str, Support] | None = None) -> AtomSpace:
    return AtomSpace(TailView(schema), supports or {})


def strictly_above(A: AtomSpace, p: Point) -> SymbolicSet:
    v = A.view
    return v.select(lambda q: not v.leq(q, p), v.minimal_open(p), _around(p))


def strictly_below(A: AtomSpace, p: Point, within: SymbolicSet) -> SymbolicSet:
    v = A.view
    return v.select(lambda q: v.leq(q, p) and not v.leq(p, q), within, _around(p))


def maximal_atoms(A: AtomSpace) -> SymbolicSet:
    """Points whose singleton is open (the atoms of simple objects)."""
    v = A.view
    return v.select(lambda p: v.is_open(SymbolicSet.of([p])), v.points)


def order_maximal(A: AtomSpace) -> SymbolicSet:
    """Points maximal under the specialization order."""
    return A.view.select(lambda p: not strictly_above(A, p), A.points)


def _require_open(A: AtomSpace, O: SymbolicSet) -> None:
    if not O <= A.points or not A.view.is_open(O):
        raise InputError(f"{A.view.describe(O)} is not an open subset")


def remove_open(A: AtomSpace, O: SymbolicSet) -> AtomSpace:
    """Quotient spectrum: drop the points of O, keep the trace topology and traced supports."""
    _require_open(A, O)
    keep = A.points - O
    view = A.view.restrict(keep)
    supports = {
        k: Support(s.points - O, s.noetherian, None if s.aass is None else s.aass - O)
        for k, s in A.supports.items()
    }
    return AtomSpace(view, supports)


def amin(A: AtomSpace, O: SymbolicSet) -> SymbolicSet:
    """Minimal points of the open O under the specialization order."""
    _require_open(A, O)
    return A.view.select(lambda p: not strictly_below(A, p, O), O)


@dataclass(frozen=True)
class LambdaReport:
    open_at: SymbolicSet
    not_open_at: SymbolicSet

    @property
    def all_open(self) -> bool:
        return not self.not_open_at


def lambda_open_check(A: AtomSpace, P: SymbolicSet) -> LambdaReport:
    """Split P by whether Λ(p) is open."""
    if not P <= A.points:
        raise InputError(f"{A.view.describe(P)} contains unknown points")
    v = A.view
    good = v.select(lambda p: v.is_open(v.minimal_open(p)), P)
    return LambdaReport(good, P - good)


def load_atom_space(doc: dict) -> AtomSpace:
    """Atom-space file: a space/poset/schema document plus optional ``supports``."""
    view = view_from_doc(doc.get("space", doc))
    supports = {}
    for label, entry in (doc.get("supports") or {}).items():
        pts = parse_set(view, entry.get("set", entry))
        aass = parse_set(view, entry["aass"]) if "aass" in entry else None
        supports[label] = Support(pts, bool(entry.get("noetherian", False)), aass)
    return AtomSpace(view, supports)


def view_from_doc(doc: dict, max_points: int | None = None) -> View:
    if "descriptors" in doc:
        return TailView(ts.load_schema(doc))
    if "subbasis" in doc:
        kw = {} if max_points is None else {"max_points": max_points}
        return FiniteView(fs.load_space(doc, **kw))
    if "points" in doc:
        kw = {} if max_points is None else {"max_points": max_points}
        P = load_preorder(doc, **kw)
        return FiniteView(fs.alexandroff_space(P, max_points=max(len(P), fs.DEFAULT_MAX_POINTS)))
    raise InputError("unrecognised space document: expected 'descriptors', 'subbasis' or 'points'")


def parse_set(view: View, entry) -> SymbolicSet:
    """Explicit list of point tokens, or ``{"named": [...], "indexed": {...}}``."""
    if isinstance(entry, list):
        return SymbolicSet.of(view.parse_point(str(t)) for t in entry)
    if isinstance(entry, dict):
        named = frozenset(entry.get("named", []))
        spec = entry.get("indexed", {})
        idx = IndexSet.empty()
        if isinstance(spec, dict):
            if "tail" in spec:
                idx = IndexSet.tail(int(spec["tail"]), spec.get("dir", getattr(getattr(view, "schema", None), "direction", "geq")))
            elif spec.get("all"):
                idx = IndexSet.everything()
            idx = idx | IndexSet.finite(spec.get("finite", []))
        if isinstance(view, TailView):
            idx = idx & view.schema.domain_set
        for p in named:
            view.check(p)
        return SymbolicSet(named, idx)
    raise InputError(f"cannot read a point set from {entry!r}")


def set_to_json(A: SymbolicSet) -> dict | list:
    if not A.indexed:
        return sorted(A.named)
    return {
        "named": sorted(A.named),
        "indexed": {"low": A.indexed.low, "high": A.indexed.high, "flips": sorted(A.indexed.flips)},
    }
