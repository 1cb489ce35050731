"""Exact integer and rational linear algebra.

Matrices are plain lists of rows (``list[list[int]]`` or ``list[list[Fraction]]``);
vectors are lists.  Nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

IntMatrix = list[list[int]]
RatVector = list[Fraction]


class LinalgError(ValueError):
    pass


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> list[int]:
        k = min(len(self.S), len(self.S[0]) if self.S else 0)
        return [self.S[i][i] for i in range(k) if self.S[i][i] != 0]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    if not M:
        return 0, 0
    return len(M), len(M[0])


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence], ncols: Optional[int] = None) -> list[list]:
    rows, cols = shape(M)
    if rows == 0:
        return [[] for _ in range(ncols or 0)]
    return [[M[i][j] for i in range(rows)] for j in range(cols)]


def matmul(X: Sequence[Sequence], Y: Sequence[Sequence]) -> list[list]:
    if not X:
        return []
    inner = len(Y)
    cols = len(Y[0]) if Y else 0
    return [[sum(X[i][k] * Y[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(X))]


def matvec(M: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in M]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence) -> list[int]:
    """Scale a rational vector to the primitive integer vector on the same ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    return [x // g for x in ints]


def normalize_sign(v: Sequence[int]) -> list[int]:
    """Flip so the first nonzero entry is positive."""
    for x in v:
        if x != 0:
            return list(v) if x > 0 else [-y for y in v]
    return list(v)


# --------------------------------------------------------------------------
# Smith normal form
# --------------------------------------------------------------------------

def smith_normal_form(M: Sequence[Sequence[int]]) -> SmithDecomposition:
    m, n = shape(M)
    S = [[int(x) for x in row] for row in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row_dst += q * row_src
        S[dst] = [a + q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):  # col_dst += q * col_src
        for row in S:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] != 0 and (best is None or abs(S[i][j]) < best[0]):
                    best = (abs(S[i][j]), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            # bring the smallest entry of row t / column t to the corner
            cand = [(abs(S[i][t]), 0, i) for i in range(t, m) if S[i][t] != 0]
            cand += [(abs(S[t][j]), 1, j) for j in range(t + 1, n) if S[t][j] != 0]
            _, kind, idx = min(cand)
            if kind == 0:
                swap_rows(t, idx)
            else:
                swap_cols(t, idx)
            p = S[t][t]
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(t, i, -(S[i][t] // p))
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(t, j, -(S[t][j] // p))
            if any(S[i][t] for i in range(t + 1, m)) or any(S[t][j] for j in range(t + 1, n)):
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return SmithDecomposition(U=U, S=S, V=V)


def invariant_factors(M: Sequence[Sequence[int]]) -> list[int]:
    return smith_normal_form(M).invariant_factors


# --------------------------------------------------------------------------
# Hermite normal form, kernels, saturation
# --------------------------------------------------------------------------

def hermite_normal_form(M: Sequence[Sequence[int]]) -> IntMatrix:
    """Row-style HNF of the row lattice of ``M``; zero rows dropped.

    Pivots are positive and entries above a pivot lie in ``[0, pivot)``.
    """
    rows = [[int(x) for x in r] for r in M if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    r = 0
    pivots = []
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][c] != 0]
            if not nz:
                break
            k = min(nz, key=lambda i: (abs(rows[i][c]), i))
            rows[r], rows[k] = rows[k], rows[r]
            done = True
            for i in range(r + 1, len(rows)):
                if rows[i][c]:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if rows[i][c]:
                        done = False
            if done:
                break
        if r < len(rows) and rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-x for x in rows[r]]
            for i in range(r):
                q = rows[i][c] // rows[r][c]
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
    return [row for row in rows[:r]]


def integer_kernel_basis(M: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    """Z-basis (HNF-reduced) of ``{m in Z^N : M m = 0}``."""
    m, n = shape(M)
    if m == 0:
        n = ncols if ncols is not None else n
        return identity(n)
    snf = smith_normal_form(M)
    r = snf.rank
    basis = [[snf.V[i][j] for i in range(n)] for j in range(r, n)]
    return hermite_normal_form(basis)


def rank(M: Sequence[Sequence]) -> int:
    return len(rref(M)[1])


def is_saturated(M: Sequence[Sequence[int]]) -> bool:
    """True iff the row lattice of ``M`` equals its saturation in ``Z^N``."""
    m, _ = shape(M)
    snf = smith_normal_form(M)
    if snf.rank < m:
        raise LinalgError("row rank deficient")
    return all(f == 1 for f in snf.invariant_factors)


def saturation(M: Sequence[Sequence[int]]) -> IntMatrix:
    """HNF basis of ``rowspace_Q(M) ∩ Z^N``."""
    m, n = shape(M)
    if m == 0:
        return []
    K = integer_kernel_basis(M)
    if not K:
        return identity(n)
    return integer_kernel_basis(K)


def lattice_equal(X: Sequence[Sequence[int]], Y: Sequence[Sequence[int]]) -> bool:
    return hermite_normal_form(X) == hermite_normal_form(Y)


# --------------------------------------------------------------------------
# Rational elimination
# --------------------------------------------------------------------------

def rref(M: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    A = [[Fraction(x) for x in row] for row in M]
    if not A:
        return [], []
    rows, cols = len(A), len(A[0])
    r = 0
    pivots = []
    for c in range(cols):
        k = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A[:r], pivots


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (Bareiss)."""
    n = len(M)
    if n == 0:
        return 1
    A = [[int(x) for x in row] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def solve_rational(M: Sequence[Sequence], b: Sequence) -> Optional[RatVector]:
    """A particular solution of ``M x = b`` over Q, or ``None`` if inconsistent.

    With full row rank the canonical least-norm solution ``M^T (M M^T)^{-1} b``
    is returned, so the answer depends only on ``(M, b)``.
    """
    m, n = shape(M)
    if m == 0:
        return None if len(b) else [Fraction(0)] * (n if n else 0)
    if len(b) != m:
        raise LinalgError("dimension mismatch")
    if rank(M) == m:
        G = matmul(M, transpose(M))
        y = _solve_square(G, b)
        return [Fraction(v) for v in matvec(transpose(M), y)]
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(R, piv):
        x[c] = row[n]
    return x


def _solve_square(G: Sequence[Sequence], b: Sequence) -> RatVector:
    n = len(G)
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(G, b)]
    R, piv = rref(aug)
    if piv != list(range(n)):
        raise LinalgError("singular system")
    return [R[i][n] for i in range(n)]


def rational_kernel(M: Sequence[Sequence], ncols: int) -> list[RatVector]:
    """Basis of the rational null space of ``M`` (``ncols`` columns)."""
    if not M:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, piv = rref(M)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(R, piv):
            v[c] = -row[f]
        basis.append(v)
    return basis


def in_span(v: Sequence, rows: Sequence[Sequence]) -> bool:
    if not any(v):
        return True
    if not rows:
        return False
    return rank(list(rows) + [list(v)]) == rank(rows)


# --------------------------------------------------------------------------
# Gale duality
# --------------------------------------------------------------------------

def gale_dual(B: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    """Integer ``n x N`` matrix ``A`` with ``A B^T = 0`` and ``Z^N -> Z^n`` surjective.

    ``B`` must be saturated with full row rank.  Rows of ``A`` are the
    HNF basis of the integer kernel of ``B``.
    """
    d, N = shape(B)
    if d == 0:
        return identity(ncols if ncols is not None else N)
    if not is_saturated(B):
        raise LinalgError("saturate first")
    return integer_kernel_basis(B)
