"""Finitely described subsets of Z (or N) and of named-point-plus-family spaces.

An ``IndexSet`` is determined by its behaviour at the two ends of Z plus a
finite set of exceptions.  With ``base(i) = high if i >= 0 else low`` the set
is ``{i : base(i) xor (i in flips)}``.  Finite sets, tails in either direction,
cofinite sets, Z and the empty set are all of this form, the form is closed
under the boolean operations, and it is canonical, so ``==`` decides equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Union

Point = Union[str, int]


@dataclass(frozen=True)
class IndexSet:
    low: bool = False
    high: bool = False
    flips: frozenset[int] = frozenset()

    # construction

    @classmethod
    def empty(cls) -> IndexSet:
        return cls()

    @classmethod
    def everything(cls) -> IndexSet:
        return cls(True, True)

    @classmethod
    def naturals(cls) -> IndexSet:
        return cls(False, True)

    @classmethod
    def finite(cls, indices: Iterable[int]) -> IndexSet:
        return cls(False, False, frozenset(int(i) for i in indices))

    @classmethod
    def tail(cls, n: int, direction: str) -> IndexSet:
        """``{i >= n}`` for direction ``geq``, ``{i <= n}`` for ``leq``."""
        if direction == "geq":
            return cls.from_values(False, True, {i: i >= n for i in range(min(n, 0) - 1, max(n, 0) + 1)})
        if direction == "leq":
            return cls.from_values(True, False, {i: i <= n for i in range(min(n, 0) - 1, max(n, 0) + 2)})
        raise ValueError(f"unknown tail direction {direction!r}")

    @classmethod
    def from_values(cls, low: bool, high: bool, values: dict[int, bool]) -> IndexSet:
        """Build from explicit values on a window; outside it the ends apply.

        Indices left of the window take ``low`` and right of it take ``high``,
        so the window must be contiguous.
        """
        if values:
            lo, hi = min(values), max(values)
        else:
            lo = hi = 0
            values = {0: high}
        full = dict(values)
        for i in range(min(lo, 0) - 1, max(hi, 0) + 2):
            if i not in full:
                full[i] = low if i < lo else high
        flips = frozenset(i for i, v in full.items() if v != (high if i >= 0 else low))
        return cls(low, high, flips)

    # queries

    def __contains__(self, i: object) -> bool:
        if not isinstance(i, int) or isinstance(i, bool):
            return False
        return (self.high if i >= 0 else self.low) != (i in self.flips)

    def __bool__(self) -> bool:
        return self.low or self.high or bool(self.flips)

    def is_finite(self) -> bool:
        return not self.low and not self.high

    def span(self) -> tuple[int, int]:
        """Smallest window outside which the set agrees with its ends."""
        pts = set(self.flips) | {-1, 0}
        return min(pts), max(pts)

    def __iter__(self) -> Iterator[int]:
        if not self.is_finite():
            raise ValueError("cannot iterate an infinite index set")
        return iter(sorted(self.flips))

    def max(self) -> int:
        if self.high or not self:
            raise ValueError("set has no maximum")
        lo, hi = self.span()
        for i in range(hi, lo - 1, -1):
            if i in self:
                return i
        return lo - 1  # only reachable when low is set and the window is empty

    def min(self) -> int:
        if self.low or not self:
            raise ValueError("set has no minimum")
        lo, hi = self.span()
        for i in range(lo, hi + 1):
            if i in self:
                return i
        return hi + 1

    # algebra

    def _combine(self, other: IndexSet, op: Callable[[bool, bool], bool]) -> IndexSet:
        lo = min(self.span()[0], other.span()[0])
        hi = max(self.span()[1], other.span()[1])
        values = {i: op(i in self, i in other) for i in range(lo - 1, hi + 2)}
        return IndexSet.from_values(op(self.low, other.low), op(self.high, other.high), values)

    def __or__(self, other: IndexSet) -> IndexSet:
        return self._combine(other, lambda a, b: a or b)

    def __and__(self, other: IndexSet) -> IndexSet:
        return self._combine(other, lambda a, b: a and b)

    def __sub__(self, other: IndexSet) -> IndexSet:
        return self._combine(other, lambda a, b: a and not b)

    def __le__(self, other: IndexSet) -> bool:
        return not (self - other)

    def describe(self, family: str = "x", label: Callable[[int], str] | None = None) -> str:
        """Human-readable form such as ``{x_j : j <= 0}`` or ``{x_1, x_4}``."""
        name = label or (lambda i: f"{family}_{i}")
        if not self:
            return "{}"
        if self.is_finite():
            return "{" + ", ".join(name(i) for i in self) + "}"
        lo, hi = self.span()
        if self.low and self.high:
            missing = [i for i in range(lo, hi + 1) if i not in self]
            if not missing:
                return f"{{all {family}}}"
            return f"{{all {family} except " + ", ".join(name(i) for i in missing) + "}"
        parts = []
        if self.high:
            # greatest index below which membership stops being total
            n = hi + 1
            while n - 1 in self and n - 1 >= lo:
                n -= 1
            parts.append(f"{{{family}_j : j >= {n}}}")
            rest = IndexSet.finite(i for i in range(lo, n) if i in self)
        else:
            n = lo - 1
            while n + 1 in self and n + 1 <= hi:
                n += 1
            parts.append(f"{{{family}_j : j <= {n}}}")
            rest = IndexSet.finite(i for i in range(n + 1, hi + 1) if i in self)
        if rest:
            parts.append(rest.describe(family, label))
        return " ∪ ".join(parts)


@dataclass(frozen=True)
class SymbolicSet:
    """A subset of a space made of finitely many named points and one indexed family."""

    named: frozenset[str] = frozenset()
    indexed: IndexSet = IndexSet()

    @classmethod
    def of(cls, points: Iterable[Point]) -> SymbolicSet:
        named, idx = [], []
        for p in points:
            (idx if isinstance(p, int) else named).append(p)
        return cls(frozenset(named), IndexSet.finite(idx))

    def __contains__(self, p: object) -> bool:
        if isinstance(p, str):
            return p in self.named
        return p in self.indexed

    def __bool__(self) -> bool:
        return bool(self.named) or bool(self.indexed)

    def __or__(self, other: SymbolicSet) -> SymbolicSet:
        return SymbolicSet(self.named | other.named, self.indexed | other.indexed)

    def __and__(self, other: SymbolicSet) -> SymbolicSet:
        return SymbolicSet(self.named & other.named, self.indexed & other.indexed)

    def __sub__(self, other: SymbolicSet) -> SymbolicSet:
        return SymbolicSet(self.named - other.named, self.indexed - other.indexed)

    def __le__(self, other: SymbolicSet) -> bool:
        return self.named <= other.named and self.indexed <= other.indexed

    def is_finite(self) -> bool:
        return self.indexed.is_finite()

    def __len__(self) -> int:
        if not self.is_finite():
            raise ValueError("infinite symbolic set has no length")
        return len(self.named) + len(self.indexed.flips)

    def elements(self) -> list[Point]:
        """Named points (sorted) followed by indices; finite sets only."""
        return sorted(self.named) + list(self.indexed)

    def describe(self, family: str = "x", label: Callable[[int], str] | None = None) -> str:
        parts = []
        if self.named:
            parts.append("{" + ", ".join(sorted(self.named)) + "}")
        if self.indexed:
            parts.append(self.indexed.describe(family, label))
        return " ∪ ".join(parts) if parts else "{}"
