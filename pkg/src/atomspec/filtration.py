"""Gabriel-Krull filtration by peeling open singletons, and the three dimensions.

Stage k holds the points whose singleton becomes open once stages 0..k-1 are
removed.  Points never peeled sit in a single "≥ω" bucket.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering
from typing import Union

from .errors import InputError
from .spectrum import (
    AtomSpace,
    FiniteView,
    maximal_atoms,
    remove_open,
    strictly_above,
)
from .symbolic import Point, SymbolicSet

DEFAULT_STAGE_CAP = 64
MAX_CHAIN = 256


@total_ordering
class _Omega:
    """Stage of points outside every finite layer; compares above every integer."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "≥ω"

    def __eq__(self, other) -> bool:
        return other is self

    def __lt__(self, other) -> bool:
        return False

    def __gt__(self, other) -> bool:
        return other is not self

    def __hash__(self) -> int:
        return hash("omega")


OMEGA = _Omega()
Stage = Union[int, _Omega]


def fmt(value) -> str:
    """Render a dimension value; ``None`` means the dimension does not exist."""
    if value is None:
        return "does-not-exist"
    return str(value)


@dataclass
class FiltrationResult:
    space: AtomSpace
    stages: list[SymbolicSet]
    residual: SymbolicSet
    stage_cap_hit: bool = False
    _heights: dict = field(default_factory=dict, repr=False)

    @property
    def stalled(self) -> bool:
        return bool(self.residual)

    def stage_of(self, p: Point) -> Stage:
        self.space.view.check(p)
        for k, s in enumerate(self.stages):
            if p in s:
                return k
        return OMEGA

    def layer_union(self, k: int) -> SymbolicSet:
        out = SymbolicSet()
        for s in self.stages[: k + 1]:
            out = out | s
        return out


def gabriel_filtration(A: AtomSpace, stage_cap: int = DEFAULT_STAGE_CAP) -> FiltrationResult:
    stages: list[SymbolicSet] = []
    cur = A
    cap_hit = False
    while cur.points:
        if len(stages) >= stage_cap:
            cap_hit = True
            break
        top = maximal_atoms(cur)
        if not top:
            break
        stages.append(top)
        cur = remove_open(cur, top)
    return FiltrationResult(A, stages, cur.points, cap_hit)


def _filtration(A: AtomSpace, F: FiltrationResult | None) -> FiltrationResult:
    return gabriel_filtration(A) if F is None else F


def gkdim(A: AtomSpace, target: Point | SymbolicSet, F: FiltrationResult | None = None) -> Stage:
    """Least stage containing a point, or the supremum over an open (-1 when empty)."""
    F = _filtration(A, F)
    if not isinstance(target, SymbolicSet):
        return F.stage_of(target)
    if not target <= A.points:
        raise InputError(f"{A.view.describe(target)} is not inside the space")
    if target & F.residual:
        return OMEGA
    best = -1
    for k, s in enumerate(F.stages):
        if target & s:
            best = k
    return best


def height(A: AtomSpace, p: Point, within: SymbolicSet | None = None, _memo: dict | None = None, _depth: int = 0) -> int:
    """Longest strict ascending chain starting at p (inside ``within`` if given)."""
    if _depth > MAX_CHAIN:
        raise InputError("ascending chain longer than the supported bound")
    memo = {} if _memo is None else _memo
    key = (p, within)
    if key in memo:
        return memo[key]
    above = strictly_above(A, p)
    if within is not None:
        above = above & within
    best = 0
    if above:
        around = [p] if isinstance(p, int) else []
        best = 1 + max(height(A, q, within, memo, _depth + 1) for q in A.view.sample(above, around))
    memo[key] = best
    return best


def dim_point(A: AtomSpace, p: Point, F: FiltrationResult | None = None) -> int | None:
    """gkdim(p) if a strict chain of that length starts at p, else ``None``."""
    F = _filtration(A, F)
    s = F.stage_of(p)
    if s is OMEGA:
        raise InputError(f"{A.view.name(p)} has no finite filtration stage")
    if ("h", p) not in F._heights:
        F._heights[("h", p)] = height(A, p)
    return s if F._heights[("h", p)] >= s else None


def dim_open(A: AtomSpace, O: SymbolicSet, F: FiltrationResult | None = None) -> int | None:
    """Largest gkdim over points of O whose dimension exists; -1 for the empty set."""
    F = _filtration(A, F)
    if not O:
        return -1
    if not A.view.is_open(O):
        raise InputError(f"{A.view.describe(O)} is not open")
    best = None
    for p in A.view.sample(O & (A.points - F.residual)):
        d = dim_point(A, p, F)
        if d is not None and (best is None or d > best):
            best = d
    return best


def adim(A: AtomSpace, target: Point | SymbolicSet) -> int:
    """Longest strict chain starting at a point, or lying inside a set (-1 when empty)."""
    if not isinstance(target, SymbolicSet):
        A.view.check(target)
        return height(A, target)
    if not target:
        return -1
    memo: dict = {}
    return max(height(A, p, target, memo) for p in A.view.sample(target))


# theorem verification


@dataclass
class Check:
    key: str
    title: str
    holds: bool
    hypothesis: bool = True
    iff: bool = False  # the statement is an equivalence with its hypothesis
    witnesses: list[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        """The verdict agrees with the theorem: passes, or fails only outside its hypothesis."""
        if self.iff:
            return self.holds == self.hypothesis
        return self.holds or not self.hypothesis

    def to_json(self) -> dict:
        return {
            "key": self.key,
            "title": self.title,
            "holds": self.holds,
            "hypothesis": self.hypothesis,
            "consistent": self.consistent,
            "witnesses": self.witnesses,
        }


@dataclass
class TheoremReport:
    name: str
    alexandroff: bool
    stalled: bool
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.consistent for c in self.checks)

    def check(self, key: str) -> Check:
        return next(c for c in self.checks if c.key == key)

    def to_json(self) -> dict:
        return {
            "model": self.name,
            "alexandroff": self.alexandroff,
            "stalled": self.stalled,
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
        }


def probe_opens(A: AtomSpace) -> list[SymbolicSet]:
    """Opens quantified over by the verifier: all of them when finite, a probe family otherwise."""
    v = A.view
    if isinstance(v, FiniteView):
        return [SymbolicSet(o) for o in v.space.open_sets()]
    found = [A.points] + [s.points for s in A.supports.values()]
    for p in v.sample(A.points):
        U = v.minimal_open(p)
        if v.is_open(U):
            found.append(U)
    out: list[SymbolicSet] = []
    for O in found:
        if O not in out:
            out.append(O)
    return out


def verify_theorems(A: AtomSpace, name: str = "model", F: FiltrationResult | None = None) -> TheoremReport:
    F = _filtration(A, F)
    v = A.view
    alex = bool(v.is_alexandroff())
    pts = v.sample(A.points)
    finite_pts = [p for p in pts if F.stage_of(p) is not OMEGA]
    opens = probe_opens(A)
    nm = v.name
    checks = []

    # (1) dim <= GKdim
    bad = []
    for p in finite_pts:
        d = dim_point(A, p, F)
        if d is not None and d > F.stage_of(p):
            bad.append(nm(p))
    for O in opens:
        g = gkdim(A, O, F)
        if g is OMEGA:
            continue
        d = dim_open(A, O, F)
        if d is not None and d > g:
            bad.append(v.describe(O))
    checks.append(Check("coindim", "dim <= GKdim on points and opens", not bad, witnesses=bad))

    # (2) strict chains descend through stages; chains in finite-GKdim opens are bounded
    bad = []
    for p in finite_pts:
        for q in v.sample(strictly_above(A, p), [p] if isinstance(p, int) else []):
            if not F.stage_of(q) < F.stage_of(p):
                bad.append(f"{nm(p)} < {nm(q)}")
    for O in opens:
        g = gkdim(A, O, F)
        if g is not OMEGA and O and adim(A, O) > g:
            bad.append(v.describe(O))
    checks.append(Check("stab", "ascending chains stabilize (strictly decreasing stages)", not bad, witnesses=bad))

    # (3) one stage is an antichain
    bad = []
    for k, s in enumerate(F.stages):
        for p in v.sample(s):
            hit = strictly_above(A, p) & s
            if hit:
                bad.append(f"stage {k}: {nm(p)} < {v.describe(hit)}")
    checks.append(Check("dist", "distinct atoms of one stage are incomparable", not bad, witnesses=bad))

    # (4) removing stage 0 lowers every stage by one
    bad = []
    if F.stages:
        R = remove_open(A, F.stages[0])
        FR = gabriel_filtration(R)
        for p in pts:
            if p in F.stages[0]:
                continue
            s, t = F.stage_of(p), FR.stage_of(p)
            want = OMEGA if s is OMEGA else s - 1
            if t != want:
                bad.append(f"{nm(p)}: {s} -> {t}")
        for O in opens:
            g = gkdim(A, O, F)
            if g is OMEGA or g < 1:
                continue
            g2 = gkdim(R, O - F.stages[0], FR)
            if g2 != g - 1:
                bad.append(f"{v.describe(O)}: {g} -> {g2}")
    checks.append(Check("coro", "GKdim drops by exactly one after removing stage 0", not bad, witnesses=bad))

    # (5) Alexandroff iff every non-maximal atom has a successor one stage lower
    bad = []
    for p in finite_pts:
        s = F.stage_of(p)
        if s == 0:
            continue
        above = strictly_above(A, p)
        if not any(F.stage_of(q) == s - 1 for q in v.sample(above, [p] if isinstance(p, int) else [])):
            bad.append(nm(p))
    checks.append(Check(
        "alexchar", "non-maximal atoms have a successor with GKdim one lower",
        not bad, alex, iff=not F.stalled, witnesses=bad,
    ))

    # (6) Alexandroff iff dim exists everywhere and equals GKdim; a stalled
    # filtration leaves points without a finite stage, outside its scope
    bad = []
    for p in pts:
        if F.stage_of(p) is OMEGA:
            bad.append(nm(p))
            continue
        if dim_point(A, p, F) != F.stage_of(p):
            bad.append(nm(p))
    checks.append(Check(
        "dimalexc", "dim exists and equals GKdim at every atom",
        not bad, alex and not F.stalled, iff=not F.stalled, witnesses=bad,
    ))

    # (7) Adim = dim = GKdim on points and opens
    bad = []
    for p in finite_pts:
        if not (adim(A, p) == dim_point(A, p, F) == F.stage_of(p)):
            bad.append(nm(p))
    for O in opens:
        g = gkdim(A, O, F)
        if g is OMEGA:
            continue
        if not (adim(A, O) == dim_open(A, O, F) == g):
            bad.append(v.describe(O))
    checks.append(Check("ad", "Adim = dim = GKdim on points and opens", not bad, alex, witnesses=bad))

    return TheoremReport(name, alex, F.stalled, checks)
