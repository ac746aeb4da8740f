"""Slow, obviously-correct reference implementations used only by the tests."""
from __future__ import annotations

from itertools import combinations, permutations, product
from math import gcd


def subsets(points):
    pts = list(points)
    return [frozenset(c) for r in range(len(pts) + 1) for c in combinations(pts, r)]


def is_topology(points, family) -> bool:
    fam = set(family)
    if frozenset() not in fam or frozenset(points) not in fam:
        return False
    return all(a | b in fam and a & b in fam for a in fam for b in fam)


def topologies_by_definition(n: int) -> list[frozenset]:
    """Every topology on n points, by checking every family of subsets."""
    pts = list(range(n))
    subs = [s for s in subsets(pts) if s and len(s) < n]
    out = []
    for bits in range(1 << len(subs)):
        fam = {frozenset(), frozenset(pts)} | {subs[k] for k in range(len(subs)) if bits >> k & 1}
        if is_topology(pts, fam):
            out.append(frozenset(fam))
    return out


def specialization(points, opens) -> set[tuple]:
    """x <= y iff every open containing x contains y."""
    return {(x, y) for x in points for y in points if all(y in o for o in opens if x in o)}


def up_closed_sets(points, leq: set[tuple]) -> set[frozenset]:
    return {s for s in subsets(points) if all(y in s for x in s for y in points if (x, y) in leq)}


def longest_chain_from(points, lt: set[tuple], p) -> int:
    succ = [q for q in points if (p, q) in lt]
    return 1 + max(longest_chain_from(points, lt, q) for q in succ) if succ else 0


def det(M):
    n = len(M)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for a in range(n):
            for b in range(a + 1, n):
                if perm[a] > perm[b]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= M[i][perm[i]]
        total += term
    return total


def int_invariant_factors(A) -> list[int]:
    """Invariant factors over Z from gcds of minors (units included)."""
    m = len(A)
    n = len(A[0]) if m else 0
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, det([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def group_order_counts(factors) -> dict[int, int]:
    """Element orders of Z/d1 x ... x Z/dk."""
    counts: dict[int, int] = {}
    for x in product(*(range(d) for d in factors)):
        o = 1
        for xi, d in zip(x, factors):
            o = o * (d // gcd(xi, d)) // gcd(o, d // gcd(xi, d))
        counts[o] = counts.get(o, 0) + 1
    return counts


def is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def poly_mul_mod(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def irreducible_by_brute_force(f, p) -> bool:
    """No factorisation into two monic polynomials of positive degree."""
    d = len(f) - 1
    if d < 1 or f[-1] != 1:
        return False
    for k in range(1, d // 2 + 1):
        for ca in product(range(p), repeat=k):
            a = tuple(ca) + (1,)
            for cb in product(range(p), repeat=d - k):
                if poly_mul_mod(a, tuple(cb) + (1,), p) == tuple(f):
                    return False
    return True
