"""Finite preorders and posets.

A relation is stored as one bitmask per point: bit ``j`` of ``up[i]`` is set
iff ``points[i] <= points[j]``.  The point tuple fixes iteration order for
every query and every report.
"""
from __future__ import annotations

import json
from itertools import permutations
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InputError

DEFAULT_MAX_POINTS = 64


def _bits(mask: int) -> Iterable[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True)
class Preorder:
    points: tuple[str, ...]
    up: tuple[int, ...]
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.points)})

    def __len__(self) -> int:
        return len(self.points)

    def index(self, p: str) -> int:
        try:
            return self._index[p]
        except KeyError:
            raise InputError(f"unknown point {p!r}") from None

    def leq(self, p: str, q: str) -> bool:
        return bool(self.up[self.index(p)] >> self.index(q) & 1)

    def lt(self, p: str, q: str) -> bool:
        return self.leq(p, q) and not self.leq(q, p)

    def pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset(
            (p, self.points[j]) for i, p in enumerate(self.points) for j in _bits(self.up[i])
        )

    def subset(self, mask: int) -> frozenset[str]:
        return frozenset(self.points[i] for i in _bits(mask))

    def mask(self, subset: Iterable[str]) -> int:
        m = 0
        for p in subset:
            m |= 1 << self.index(p)
        return m

    def restrict(self, keep: Iterable[str]) -> Preorder:
        keep = set(keep)
        pts = tuple(p for p in self.points if p in keep)
        sub = Preorder(pts, ())
        up = tuple(sub.mask(q for q in self.subset(self.up[self.index(p)]) if q in keep) for p in pts)
        return Preorder(pts, up)

    def to_json(self) -> dict:
        return {
            "points": list(self.points),
            "leq": [list(e) for e in transitive_reduction(self)],
        }


# A poset is a preorder that passes is_poset; kept as an alias for annotations.
Poset = Preorder


def build_preorder(
    points: Sequence[str],
    generating_pairs: Iterable[tuple[str, str]] = (),
    max_points: int = DEFAULT_MAX_POINTS,
) -> Preorder:
    """Smallest reflexive transitive relation on ``points`` containing the pairs."""
    points = tuple(points)
    if len(set(points)) != len(points):
        raise InputError("duplicate point identifiers")
    if len(points) > max_points:
        raise InputError(f"{len(points)} points exceeds the cap of {max_points}")
    index = {p: i for i, p in enumerate(points)}
    up = [1 << i for i in range(len(points))]
    for a, b in generating_pairs:
        for x in (a, b):
            if x not in index:
                raise InputError(f"unknown point {x!r} in pair ({a!r}, {b!r})")
        up[index[a]] |= 1 << index[b]
    # Warshall over bitmasks
    for k in range(len(points)):
        bit = 1 << k
        for i in range(len(points)):
            if up[i] & bit:
                up[i] |= up[k]
    return Preorder(points, tuple(up))


def from_relation(points: Sequence[str], up: Sequence[int]) -> Preorder:
    """Wrap an already reflexive-transitive bitmask relation without re-closing it."""
    return Preorder(tuple(points), tuple(up))


def is_poset(P: Preorder) -> bool:
    for i in range(len(P)):
        for j in _bits(P.up[i]):
            if j != i and P.up[j] >> i & 1:
                return False
    return True


def up_set(P: Preorder, p: str) -> frozenset[str]:
    return P.subset(P.up[P.index(p)])


def down_set(P: Preorder, p: str) -> frozenset[str]:
    i = P.index(p)
    return frozenset(q for j, q in enumerate(P.points) if P.up[j] >> i & 1)


def extremal_elements(P: Preorder, kind: str = "maximal") -> list[str]:
    """Maximal (``leq(p,q)`` implies ``leq(q,p)``) or minimal elements, in point order."""
    if kind not in ("maximal", "minimal"):
        raise InputError(f"kind must be 'maximal' or 'minimal', not {kind!r}")
    out = []
    for p in P.points:
        others = up_set(P, p) if kind == "maximal" else down_set(P, p)
        if all((P.leq(q, p) if kind == "maximal" else P.leq(p, q)) for q in others):
            out.append(p)
    return out


def _strict_successors(P: Preorder, i: int) -> list[int]:
    return [j for j in _bits(P.up[i]) if not P.up[j] >> i & 1]


def topological_order(P: Poset) -> list[str]:
    """Points ordered so that ``p < q`` puts ``p`` first; ties keep point-list order."""
    n = len(P)
    indeg = [0] * n
    for i in range(n):
        for j in _strict_successors(P, i):
            indeg[j] += 1
    order = []
    ready = [i for i in range(n) if indeg[i] == 0]
    while ready:
        ready.sort()
        i = ready.pop(0)
        order.append(i)
        for j in _strict_successors(P, i):
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    return [P.points[i] for i in order]


def up_heights(P: Poset) -> dict[str, int]:
    """Length of the longest strict chain starting at each point."""
    if not is_poset(P):
        raise InputError("longest chains need a poset; collapse the preorder first")
    height: dict[str, int] = {}
    for p in reversed(topological_order(P)):
        succ = [P.points[j] for j in _strict_successors(P, P.index(p))]
        height[p] = 1 + max(height[q] for q in succ) if succ else 0
    return height


def longest_chain_above(P: Poset, p: str) -> int:
    P.index(p)
    return up_heights(P)[p]


def _class_name(members: Sequence[str]) -> str:
    if len(members) == 1:
        return members[0]
    return "{" + ",".join(members) + "}"


def kolmogorov_collapse(P: Preorder) -> tuple[Poset, dict[str, str]]:
    """Quotient by mutual comparability; returns the poset and the projection."""
    seen: dict[int, str] = {}
    classes: list[list[str]] = []
    proj: dict[str, str] = {}
    for i, p in enumerate(P.points):
        cls_mask = sum(1 << j for j in _bits(P.up[i]) if P.up[j] >> i & 1)
        if cls_mask not in seen:
            members = [P.points[j] for j in _bits(cls_mask)]
            seen[cls_mask] = _class_name(members)
            classes.append(members)
        proj[p] = seen[cls_mask]
    names = [_class_name(m) for m in classes]
    pairs = [(proj[p], proj[q]) for p, q in P.pairs()]
    return build_preorder(names, pairs, max_points=max(len(names), 1)), proj


def transitive_reduction(P: Preorder) -> list[tuple[str, str]]:
    """Covering pairs of the strict order, plus a cycle through each equivalence class."""
    edges = []
    for i, p in enumerate(P.points):
        succ = set(_strict_successors(P, i))
        for j in sorted(succ):
            if not any(P.up[k] >> j & 1 and not P.up[j] >> k & 1 for k in succ if k != j):
                edges.append((p, P.points[j]))
    _, proj = kolmogorov_collapse(P)
    by_class: dict[str, list[str]] = {}
    for p in P.points:
        by_class.setdefault(proj[p], []).append(p)
    for members in by_class.values():
        if len(members) > 1:
            edges.extend(zip(members, members[1:] + members[:1]))
    # keep only one representative per class on strict edges
    reps = {m[0] for m in by_class.values()}
    return [(a, b) for a, b in edges if (a in reps and b in reps) or proj[a] == proj[b]]


def to_dot(P: Preorder, name: str = "order") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    lines += [f'  "{p}";' for p in P.points]
    lines += [f'  "{a}" -> "{b}";' for a, b in transitive_reduction(P)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_preorder(path_or_doc, max_points: int = DEFAULT_MAX_POINTS) -> Preorder:
    doc = path_or_doc
    if not isinstance(doc, dict):
        with open(doc) as fh:
            doc = json.load(fh)
    if "points" not in doc:
        raise InputError("poset file needs a 'points' field")
    pairs = doc.get("leq", [])
    for k, pair in enumerate(pairs):
        if len(pair) != 2:
            raise InputError(f"leq[{k}] must be a pair, got {pair!r}")
    return build_preorder(doc["points"], [tuple(p) for p in pairs], max_points=max_points)


def posets_up_to_isomorphism(n: int) -> list[Poset]:
    """One representative of each isomorphism class of posets on n points.

    Every finite poset has a natural labelling (a linear extension), so it is
    enough to close relations with i < j only and keep one per canonical form.
    """
    points = tuple(f"p{i}" for i in range(n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    perms = list(permutations(range(n)))
    seen: set[tuple[int, ...]] = set()
    out = []
    for bits in range(1 << len(pairs)):
        up = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                up[i] |= 1 << j
        if any(up[j] & ~up[i] for i in range(n) for j in _bits(up[i])):
            continue  # not transitive
        canon = min(_relabel(up, p) for p in perms)
        if canon not in seen:
            seen.add(canon)
            out.append(from_relation(points, up))
    return out


def _relabel(up: Sequence[int], perm: Sequence[int]) -> tuple[int, ...]:
    new = [0] * len(up)
    for i, m in enumerate(up):
        new[perm[i]] = sum(1 << perm[j] for j in _bits(m))
    return tuple(new)
