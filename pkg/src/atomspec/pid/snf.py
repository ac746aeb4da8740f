"""Smith normal form over a Euclidean ring, with transforms and a minor-gcd oracle."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

Matrix = list[list]


@dataclass(frozen=True)
class SNFResult:
    diagonal: tuple  # full diagonal of D, canonical, units included
    rank: int
    U: tuple
    V: tuple
    D: tuple

    @property
    def invariant_factors(self) -> tuple:
        return self.diagonal[: self.rank]


def identity(R, n: int) -> Matrix:
    return [[R.one if i == j else R.zero for j in range(n)] for i in range(n)]


def matmul(R, A: Matrix, B: Matrix, inner: int | None = None) -> Matrix:
    k = len(B) if inner is None else inner
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = []
        for j in range(cols):
            acc = R.zero
            for t in range(k):
                if not R.is_zero(row[t]) and not R.is_zero(B[t][j]):
                    acc = R.add(acc, R.mul(row[t], B[t][j]))
            new.append(acc)
        out.append(new)
    return out


def _freeze(M: Matrix) -> tuple:
    return tuple(tuple(r) for r in M)


def snf(R, matrix) -> SNFResult:
    """Diagonalise ``matrix`` (m x n) as U·A·V = D by unimodular row and column steps."""
    A = [list(r) for r in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(r) != n for r in A):
        raise ValueError("matrix rows differ in length")
    U = identity(R, m)
    V = identity(R, n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        for M in (A, U):
            M[dst] = [R.sub(x, R.mul(q, y)) for x, y in zip(M[dst], M[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for M in (A, V):
            for r in M:
                r[dst] = R.sub(r[dst], R.mul(q, r[src]))

    def least(cells):
        best = None
        for i, j in cells:
            if not R.is_zero(A[i][j]):
                key = (R.size(A[i][j]), i, j)
                if best is None or key < best:
                    best = key
        return None if best is None else best[1:]

    t = 0
    while t < min(m, n):
        pos = least((i, j) for i in range(t, m) for j in range(t, n))
        if pos is None:
            break
        while True:
            i, j = pos
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            piv = A[t][t]
            for i in range(t + 1, m):
                if not R.is_zero(A[i][t]):
                    add_row(i, t, R.divmod(A[i][t], piv)[0])
            for j in range(t + 1, n):
                if not R.is_zero(A[t][j]):
                    add_col(j, t, R.divmod(A[t][j], piv)[0])
            pos = least([(i, t) for i in range(t + 1, m)] + [(t, j) for j in range(t + 1, n)])
            if pos is not None:
                # a remainder survived and is smaller than the pivot
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if not R.divides(piv, A[i][j])),
                None,
            )
            if bad is None:
                break
            # pull the offending row into row t, then re-reduce
            add_row(t, bad[0], R.neg(R.one))
            pos = (t, t)
        u = R.normalizer(A[t][t])
        A[t] = [R.mul(u, x) for x in A[t]]
        U[t] = [R.mul(u, x) for x in U[t]]
        t += 1
    rank = t
    diag = tuple(A[i][i] for i in range(min(m, n)))
    return SNFResult(diag, rank, _freeze(U), _freeze(V), _freeze(A))


def verify(R, matrix, res: SNFResult) -> list[str]:
    """Problems with an SNF result: transform product, shape, divisibility, canonical form."""
    problems = []
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    UA = matmul(R, [list(r) for r in res.U], [list(r) for r in matrix], inner=m)
    D = matmul(R, UA, [list(r) for r in res.V], inner=n) if m else []
    if _freeze(D) != res.D:
        problems.append("U·A·V differs from D")
    for i in range(m):
        for j in range(n):
            if i != j and not R.is_zero(res.D[i][j]):
                problems.append(f"off-diagonal entry at ({i},{j})")
    facs = res.invariant_factors
    for a, b in zip(facs, facs[1:]):
        if not R.divides(a, b):
            problems.append(f"{R.fmt(a)} does not divide {R.fmt(b)}")
    if any(R.is_zero(d) for d in facs) or any(not R.is_zero(d) for d in res.diagonal[res.rank:]):
        problems.append("rank does not split the diagonal into nonzero then zero")
    if any(d != R.canonical(d) for d in facs):
        problems.append("invariant factors not in canonical form")
    if not R.is_unit(determinant(R, res.U)) or not R.is_unit(determinant(R, res.V)):
        problems.append("transform is not unimodular")
    return problems


def determinant(R, M) -> object:
    """Leibniz expansion; intended for small matrices."""
    n = len(M)
    if n == 0:
        return R.one
    total = R.zero
    for perm in itertools.permutations(range(n)):
        term = R.one
        for i, j in enumerate(perm):
            term = R.mul(term, M[i][j])
            if R.is_zero(term):
                break
        if R.is_zero(term):
            continue
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        total = R.sub(total, term) if inversions % 2 else R.add(total, term)
    return total


def minor_gcd_factors(R, matrix) -> tuple:
    """Invariant factors from gcds of k x k minors: d_k = g_k / g_(k-1)."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    out = []
    prev = R.one
    for k in range(1, min(m, n) + 1):
        g = R.zero
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = R.gcd(g, determinant(R, [[matrix[i][j] for j in cols] for i in rows]))
        if R.is_zero(g):
            break
        out.append(R.canonical(R.exact_div(g, prev)))
        prev = g
    return tuple(out)
