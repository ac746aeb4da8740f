"""Euclidean domains used for presented modules: Z and F_p[x].

Elements are plain values: ``int`` for Z, and tuples of coefficients
(constant term first, no trailing zeros) for F_p[x].  Ring objects carry the
operations so matrix code stays ring-agnostic.
"""
from __future__ import annotations

import bisect
import itertools
import random
from functools import lru_cache
from typing import Any

from ..errors import InputError


class IntegerRing:
    name = "Z"
    zero = 0
    one = 1

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegerRing)

    def __hash__(self) -> int:
        return hash("Z")

    def __repr__(self) -> str:
        return "Z"

    def element(self, v: Any) -> int:
        if isinstance(v, bool) or not isinstance(v, int):
            raise InputError(f"integer entry expected, got {v!r}")
        return v

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def divmod(self, a, b):
        q, r = divmod(a, b)
        # least absolute remainder keeps the Euclidean size strictly decreasing
        if 2 * abs(r) > abs(b):
            r -= b
            q += 1
        return q, r

    def size(self, a) -> int:
        return abs(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def normalizer(self, a):
        """Unit u with u*a in canonical (non-negative) form."""
        return -1 if a < 0 else 1

    def canonical(self, a):
        return abs(a)

    def inverse_unit(self, u):
        return u

    def divides(self, a, b) -> bool:
        if a == 0:
            return b == 0
        return b % a == 0

    def exact_div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{b} does not divide {a}")
        return q

    def gcd(self, a, b):
        while b:
            a, b = b, a % b
        return abs(a)

    def factor(self, a) -> list[tuple[int, int]]:
        """Prime factorisation of a nonzero non-unit, primes ascending."""
        n = abs(a)
        out = []
        d = 2
        while d * d <= n:
            if n % d == 0:
                e = 0
                while n % d == 0:
                    n //= d
                    e += 1
                out.append((d, e))
            d += 1 if d == 2 else 2
        if n > 1:
            out.append((n, 1))
        return out

    def is_prime(self, a) -> bool:
        f = self.factor(a) if abs(a) > 1 else []
        return len(f) == 1 and f[0][1] == 1

    def prime_at(self, i: int) -> int:
        return _primes_upto_count(i + 1)[i]

    def prime_index(self, p: int) -> int:
        p = abs(p)
        if not self.is_prime(p):
            raise InputError(f"{p} is not prime")
        primes = _primes_below(p + 1)
        return bisect.bisect_left(primes, p)

    def fmt(self, a) -> str:
        return str(a)

    def to_json(self, a):
        return a

    def random_element(self, rng: random.Random, bound: int = 20):
        return rng.randint(-bound, bound)


@lru_cache(maxsize=None)
def _sieve(limit: int) -> tuple[int, ...]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, int(limit ** 0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return tuple(i for i, f in enumerate(flags) if f)


def _primes_below(n: int) -> tuple[int, ...]:
    limit = 1 << max(6, (n - 1).bit_length())
    return _sieve(limit)


def _primes_upto_count(k: int) -> tuple[int, ...]:
    limit = 64
    while len(_sieve(limit)) < k:
        limit *= 2
    return _sieve(limit)


def _trim(c) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _mobius(n: int) -> int:
    res, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            res = -res
        d += 1
    return -res if n > 1 else res


class PolyRingModP:
    """F_p[x] with coefficient tuples, constant term first."""

    def __init__(self, p: int):
        if not IntegerRing().is_prime(p):
            raise InputError(f"F_p[x] needs a prime modulus, got {p}")
        self.p = p
        self.zero = ()
        self.one = (1,)
        self.name = f"F{p}[x]"
        self._irr: dict[int, list[tuple[int, ...]]] = {}

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyRingModP) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Fp", self.p))

    def __repr__(self) -> str:
        return self.name

    def element(self, v: Any) -> tuple[int, ...]:
        if isinstance(v, int) and not isinstance(v, bool):
            v = [v]
        if not isinstance(v, (list, tuple)) or not all(isinstance(c, int) for c in v):
            raise InputError(f"polynomial entry must be a coefficient list, got {v!r}")
        return _trim(c % self.p for c in v)

    def add(self, a, b):
        n = max(len(a), len(b))
        return _trim(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % self.p for i in range(n))

    def neg(self, a):
        return _trim((-c) % self.p for c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = (out[i + j] + x * y) % self.p
        return _trim(out)

    def scale(self, a, c: int):
        return _trim((x * c) % self.p for x in a)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(a)
        inv = pow(b[-1], -1, self.p)
        q = [0] * max(len(a) - len(b) + 1, 0)
        while len(r) >= len(b) and r:
            shift = len(r) - len(b)
            c = (r[-1] * inv) % self.p
            q[shift] = c
            for i, y in enumerate(b):
                r[shift + i] = (r[shift + i] - c * y) % self.p
            r = list(_trim(r))
        return _trim(q), tuple(r)

    def size(self, a) -> int:
        return len(a) - 1

    def is_zero(self, a) -> bool:
        return not a

    def is_unit(self, a) -> bool:
        return len(a) == 1

    def normalizer(self, a):
        return (pow(a[-1], -1, self.p),) if a else (1,)

    def canonical(self, a):
        return self.mul(self.normalizer(a), a) if a else ()

    def inverse_unit(self, u):
        return (pow(u[0], -1, self.p),)

    def divides(self, a, b) -> bool:
        if not a:
            return not b
        return not self.divmod(b, a)[1]

    def exact_div(self, a, b):
        q, r = self.divmod(a, b)
        if r:
            raise ArithmeticError(f"{self.fmt(b)} does not divide {self.fmt(a)}")
        return q

    def gcd(self, a, b):
        while b:
            a, b = b, self.divmod(a, b)[1]
        return self.canonical(a)

    def _monic_of_degree(self, d: int):
        """Monic polynomials of degree d in canonical (high-to-low lexicographic) order."""
        for digits in itertools.product(range(self.p), repeat=d):
            yield tuple(reversed(digits)) + (1,)

    def irreducibles(self, d: int) -> list[tuple[int, ...]]:
        if d not in self._irr:
            lower = [f for e in range(1, d // 2 + 1) for f in self.irreducibles(e)]
            self._irr[d] = [
                g for g in self._monic_of_degree(d)
                if not any(not self.divmod(g, f)[1] for f in lower)
            ] if d >= 1 else []
        return self._irr[d]

    def count_irreducibles(self, d: int) -> int:
        return sum(_mobius(e) * self.p ** (d // e) for e in range(1, d + 1) if d % e == 0) // d

    def factor(self, a) -> list[tuple[tuple[int, ...], int]]:
        """Monic irreducible factorisation by trial division, factors in canonical order."""
        f = self.canonical(a)
        out = []
        d = 1
        while len(f) - 1 >= 2 * d:
            for g in self.irreducibles(d):
                e = 0
                while True:
                    q, r = self.divmod(f, g)
                    if r:
                        break
                    f, e = q, e + 1
                if e:
                    out.append((g, e))
            d += 1
        if len(f) > 1:
            # what remains has no factor of degree <= half its own, so it is irreducible
            out.append((f, 1))
            out.sort(key=lambda fe: self._key(fe[0]))
            merged: list = []
            for g, e in out:
                if merged and merged[-1][0] == g:
                    merged[-1] = (g, merged[-1][1] + e)
                else:
                    merged.append((g, e))
            out = merged
        return out

    def _key(self, f):
        return (len(f), tuple(reversed(f)))

    def is_prime(self, a) -> bool:
        if len(a) < 2:
            return False
        fac = self.factor(a)
        return len(fac) == 1 and fac[0][1] == 1

    def prime_at(self, i: int):
        d = 1
        while i >= self.count_irreducibles(d):
            i -= self.count_irreducibles(d)
            d += 1
        return self.irreducibles(d)[i]

    def prime_index(self, f) -> int:
        f = self.canonical(f)
        if not self.is_prime(f):
            raise InputError(f"{self.fmt(f)} is not irreducible")
        d = len(f) - 1
        before = sum(self.count_irreducibles(e) for e in range(1, d))
        return before + self.irreducibles(d).index(f)

    def fmt(self, a) -> str:
        if not a:
            return "0"
        terms = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            terms.append(coef + mono)
        return "+".join(terms)

    def to_json(self, a):
        return list(a)

    def random_element(self, rng: random.Random, degree: int = 2):
        return self.element([rng.randrange(self.p) for _ in range(rng.randint(0, degree + 1))])


def ring_from_json(spec) -> IntegerRing | PolyRingModP:
    if spec == "Z":
        return IntegerRing()
    if isinstance(spec, dict) and "Fp" in spec:
        return PolyRingModP(int(spec["Fp"]))
    raise InputError(f"ring must be \"Z\" or {{\"Fp\": p}}, got {spec!r}")


def ring_to_json(R) -> Any:
    return "Z" if isinstance(R, IntegerRing) else {"Fp": R.p}


ZZ = IntegerRing()
