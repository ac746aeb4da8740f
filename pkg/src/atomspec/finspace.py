"""Finite topological spaces and their correspondence with preorders.

Opens are kept as bitmasks over the point tuple.  ``alexandroff_space`` is the
functor from preorders to spaces (opens are up-closed sets) and
``specialization_preorder`` goes back.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce
from itertools import product
from operator import or_
from typing import Iterable, Sequence

from .errors import InputError
from .order_core import Preorder, _bits, build_preorder, from_relation, is_poset, to_dot

DEFAULT_MAX_POINTS = 16
DEFAULT_MAX_MAPS = 200_000


@dataclass(frozen=True)
class FinSpace:
    points: tuple[str, ...]
    opens: frozenset[int]
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.points)})

    def __len__(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    def index(self, p: str) -> int:
        try:
            return self._index[p]
        except KeyError:
            raise InputError(f"unknown point {p!r}") from None

    def mask(self, subset: Iterable[str]) -> int:
        m = 0
        for p in subset:
            m |= 1 << self.index(p)
        return m

    def subset(self, mask: int) -> frozenset[str]:
        return frozenset(self.points[i] for i in _bits(mask))

    def is_open(self, subset: Iterable[str]) -> bool:
        return self.mask(subset) in self.opens

    def open_sets(self) -> list[frozenset[str]]:
        """Opens in canonical order: by size, then by bitmask."""
        return [self.subset(m) for m in sorted(self.opens, key=lambda m: (bin(m).count("1"), m))]

    def subspace(self, keep: Iterable[str]) -> FinSpace:
        keep = set(keep)
        pts = tuple(p for p in self.points if p in keep)
        new = {p: i for i, p in enumerate(pts)}
        opens = set()
        for m in self.opens:
            opens.add(sum(1 << new[p] for p in self.subset(m) if p in new))
        return FinSpace(pts, frozenset(opens))


def _minimal_open_masks(n: int, family: Iterable[int]) -> list[int]:
    full = (1 << n) - 1
    u = [full] * n
    for s in family:
        for i in _bits(s):
            u[i] &= s
    return u


def _unions(basis: Iterable[int]) -> frozenset[int]:
    opens = {0}
    for b in set(basis):
        opens |= {o | b for o in opens}
    return frozenset(opens)


def generate_topology(
    points: Sequence[str],
    subbasis: Iterable[Iterable[str]] = (),
    max_points: int = DEFAULT_MAX_POINTS,
) -> FinSpace:
    """Smallest topology on ``points`` containing every subbasis member."""
    points = tuple(points)
    if len(set(points)) != len(points):
        raise InputError("duplicate point identifiers")
    if len(points) > max_points:
        raise InputError(f"{len(points)} points exceeds the cap of {max_points}")
    skel = FinSpace(points, frozenset())
    masks = [skel.mask(s) for s in subbasis]
    return _from_masks(points, masks)


def _from_masks(points: tuple[str, ...], masks: Iterable[int]) -> FinSpace:
    # on a finite set every open is a union of the minimal neighbourhoods U_x
    u = _minimal_open_masks(len(points), masks)
    return FinSpace(points, _unions(u))


def minimal_open(X: FinSpace, x: str) -> frozenset[str]:
    i = X.index(x)
    m = X.full
    for o in X.opens:
        if o >> i & 1:
            m &= o
    return X.subset(m)


def _u_masks(X: FinSpace) -> list[int]:
    u = [X.full] * len(X)
    for o in X.opens:
        for i in _bits(o):
            u[i] &= o
    return u


def specialization_preorder(X: FinSpace) -> Preorder:
    """x <= y iff every open containing x contains y, i.e. y is in U_x."""
    return from_relation(X.points, _u_masks(X))


def alexandroff_space(P: Preorder, max_points: int = DEFAULT_MAX_POINTS) -> FinSpace:
    """The space whose opens are exactly the up-closed subsets of ``P``."""
    if len(P) > max_points:
        raise InputError(f"{len(P)} points exceeds the cap of {max_points}")
    return FinSpace(P.points, _unions(P.up))


@dataclass(frozen=True)
class Comparison:
    equal: bool
    witness: frozenset[str] | None = None


def counit_compare(X: FinSpace) -> Comparison:
    """Compare S(T(X)) with X; a witness is an up-closed set that is not open."""
    P = specialization_preorder(X)
    for m in sorted(_unions(P.up)):
        if m not in X.opens:
            return Comparison(False, X.subset(m))
    # every open of X is up-closed, so the reverse inclusion always holds
    return Comparison(True)


def is_kolmogorov(X: FinSpace) -> bool:
    u = _u_masks(X)
    return len(set(u)) == len(u)


def kolmogorov_quotient(X: FinSpace) -> tuple[FinSpace, dict[str, str]]:
    """Identify points with equal minimal opens; opens are the images of opens."""
    u = _u_masks(X)
    names: dict[int, str] = {}
    order: list[int] = []
    for i in range(len(X)):
        if u[i] not in names:
            members = [X.points[j] for j in range(len(X)) if u[j] == u[i]]
            names[u[i]] = members[0] if len(members) == 1 else "{" + ",".join(members) + "}"
            order.append(u[i])
    qpoints = tuple(names[k] for k in order)
    proj = {X.points[i]: names[u[i]] for i in range(len(X))}
    qidx = {p: i for i, p in enumerate(qpoints)}
    qopens = frozenset(
        reduce(or_, (1 << qidx[proj[p]] for p in X.subset(o)), 0) for o in X.opens
    )
    return FinSpace(qpoints, qopens), proj


def is_continuous(f: dict[str, str], X: FinSpace, Y: FinSpace) -> bool:
    for o in Y.opens:
        pre = sum(1 << X.index(p) for p in X.points if Y.mask([f[p]]) & o)
        if pre not in X.opens:
            return False
    return True


def is_monotone(f: dict[str, str], P: Preorder, Q: Preorder) -> bool:
    return all(Q.leq(f[a], f[b]) for a, b in P.pairs())


def adjoint_maps(
    P: Preorder, Y: FinSpace, max_maps: int = DEFAULT_MAX_MAPS
) -> tuple[list[tuple[str, ...]], list[tuple[str, ...]]]:
    """All continuous maps S(P) -> Y and all monotone maps P -> T(Y), as value tuples."""
    if len(Y) ** len(P) > max_maps:
        raise InputError(f"{len(Y)}^{len(P)} maps exceeds the enumeration cap of {max_maps}")
    SP = alexandroff_space(P, max_points=max(len(P), 1))
    TY = specialization_preorder(Y)
    cont, mono = [], []
    for values in product(Y.points, repeat=len(P)):
        f = dict(zip(P.points, values))
        if is_continuous(f, SP, Y):
            cont.append(values)
        if is_monotone(f, P, TY):
            mono.append(values)
    return cont, mono


def adjunction_check(P: Preorder, Y: FinSpace, max_maps: int = DEFAULT_MAX_MAPS) -> bool:
    """True iff continuous S(P) -> Y and monotone P -> T(Y) are the same functions."""
    cont, mono = adjoint_maps(P, Y, max_maps)
    return cont == mono


def to_dot_space(X: FinSpace, name: str = "space") -> str:
    return to_dot(specialization_preorder(X), name)


def all_preorders(n: int) -> Iterable[Preorder]:
    """Every preorder on the labelled points p0..p{n-1}."""
    points = tuple(f"p{i}" for i in range(n))
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in range(1 << len(off)):
        up = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(off):
            if bits >> k & 1:
                up[i] |= 1 << j
        if all(up[j] & ~up[i] == 0 for i in range(n) for j in _bits(up[i])):
            yield from_relation(points, up)


def all_topologies(n: int) -> list[FinSpace]:
    """Every topology on p0..p{n-1}, reached by adjoining one subset at a time to a subbasis."""
    points = tuple(f"p{i}" for i in range(n))
    subsets = range(1 << n)
    start = _from_masks(points, [])
    seen = {start.opens: start}
    frontier = [start]
    while frontier:
        nxt = []
        for X in frontier:
            for s in subsets:
                if s in X.opens:
                    continue
                Y = _from_masks(points, list(X.opens) + [s])
                if Y.opens not in seen:
                    seen[Y.opens] = Y
                    nxt.append(Y)
        frontier = nxt
    return [seen[k] for k in sorted(seen, key=lambda o: sorted(o))]


def load_space(path_or_doc, max_points: int = DEFAULT_MAX_POINTS) -> FinSpace:
    doc = path_or_doc
    if not isinstance(doc, dict):
        with open(doc) as fh:
            doc = json.load(fh)
    if "points" not in doc or "subbasis" not in doc:
        raise InputError("space file needs 'points' and 'subbasis' fields")
    return generate_topology(doc["points"], doc["subbasis"], max_points=max_points)


def poset_space(points: Sequence[str], pairs: Iterable[tuple[str, str]]) -> FinSpace:
    """Convenience: the Alexandroff space of the preorder generated by ``pairs``."""
    P = build_preorder(points, pairs)
    return alexandroff_space(P, max_points=max(len(P), DEFAULT_MAX_POINTS))


__all__ = [
    "Comparison",
    "FinSpace",
    "adjoint_maps",
    "adjunction_check",
    "alexandroff_space",
    "all_preorders",
    "all_topologies",
    "counit_compare",
    "generate_topology",
    "is_kolmogorov",
    "is_poset",
    "kolmogorov_quotient",
    "load_space",
    "minimal_open",
    "poset_space",
    "specialization_preorder",
]
