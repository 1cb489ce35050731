"""Exact rational linear programming: two-phase tableau simplex, Bland's rule.

All variables are free.  Inputs may be ints or Fractions; arithmetic runs on
``gmpy2.mpq`` when it is importable and on ``Fraction`` otherwise, and every
returned number is a ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

try:  # pragma: no cover - exercised implicitly
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: Optional[list[Fraction]] = None
    value: Optional[Fraction] = None
    pivots: int = field(default=0, repr=False)

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def maximize(c: Sequence, A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
             A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
             nvars: Optional[int] = None, raw: bool = False) -> LPResult:
    """Maximize ``c.x`` subject to ``A_ub x <= b_ub`` and ``A_eq x = b_eq``.

    ``x`` is unrestricted in sign.  Termination is guaranteed by Bland's rule.
    With ``raw`` the solution is left in the internal number type.
    """
    n = nvars if nvars is not None else len(c)
    A_ub, A_eq = list(A_ub), list(A_eq)
    m_ub, m_eq = len(A_ub), len(A_eq)
    m = m_ub + m_eq

    # columns: x+ (n), x- (n), slacks (m_ub), artificials (as needed)
    n_struct = 2 * n + m_ub
    rows: list[list] = []
    rhs: list = []
    basis: list[int] = []
    art_rows: list[int] = []
    for i in range(m):
        if i < m_ub:
            coeffs, b = A_ub[i], b_ub[i]
        else:
            coeffs, b = A_eq[i - m_ub], b_eq[i - m_ub]
        row = [_Q(0)] * n_struct
        for j in range(n):
            a = _Q(coeffs[j])
            row[j] = a
            row[n + j] = -a
        if i < m_ub:
            row[2 * n + i] = _Q(1)
        b = _Q(b)
        if b < 0:
            row = [-a for a in row]
            b = -b
        rows.append(row)
        rhs.append(b)
        if i < m_ub and row[2 * n + i] == 1:
            basis.append(2 * n + i)
        else:
            basis.append(-1)
            art_rows.append(i)

    n_art = len(art_rows)
    total = n_struct + n_art
    for row in rows:
        row.extend([_Q(0)] * n_art)
    for k, i in enumerate(art_rows):
        rows[i][n_struct + k] = _Q(1)
        basis[i] = n_struct + k

    pivots = 0

    def pivot(r: int, col: int, obj: list) -> None:
        nonlocal pivots
        pivots += 1
        prow = rows[r]
        p = prow[col]
        if p != 1:
            inv = 1 / p
            prow[:] = [a * inv for a in prow]
            rhs[r] *= inv
        nz = [(j, prow[j]) for j in range(total) if prow[j]]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][col]
                if f:
                    ri = rows[i]
                    for j, a in nz:
                        ri[j] -= f * a
                    rhs[i] -= f * rhs[r]
        f = obj[col]
        if f:
            for j, a in nz:
                obj[j] -= f * a
            obj[total] -= f * rhs[r]
        basis[r] = col

    def run(obj: list, allowed: int) -> str:
        # obj holds reduced costs z_j - c_j style: entering when obj[j] < 0
        while True:
            col = next((j for j in range(allowed) if obj[j] < 0), None)
            if col is None:
                return OPTIMAL
            best = None
            for i in range(len(rows)):
                a = rows[i][col]
                if a > 0:
                    ratio = rhs[i] / a
                    key = (ratio, basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            pivot(best[1], col, obj)

    # phase 1: maximize -sum(artificials)  <=>  reduced costs of sum(artificials)
    if n_art:
        obj = [_Q(0)] * (total + 1)
        for k in range(n_art):
            obj[n_struct + k] = _Q(1)
        for i in art_rows:
            for j in range(total):
                obj[j] -= rows[i][j]
            obj[total] -= rhs[i]
        run(obj, total)
        if obj[total] != 0:
            return LPResult(INFEASIBLE, pivots=pivots)
        # drive remaining artificials out of the basis
        for i in range(len(rows)):
            if basis[i] >= n_struct:
                col = next((j for j in range(n_struct) if rows[i][j] != 0), None)
                if col is not None:
                    pivot(i, col, obj)
        keep = [i for i in range(len(rows)) if basis[i] < n_struct]
        rows[:] = [rows[i][:n_struct] for i in keep]
        rhs[:] = [rhs[i] for i in keep]
        basis[:] = [basis[i] for i in keep]
        total = n_struct

    # phase 2
    obj = [_Q(0)] * (total + 1)
    for j in range(n):
        cj = _Q(c[j])
        obj[j] = -cj
        obj[n + j] = cj
    for i, bcol in enumerate(basis):
        f = obj[bcol]
        if f:
            for j in range(total):
                obj[j] -= f * rows[i][j]
            obj[total] -= f * rhs[i]
    status = run(obj, total)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, pivots=pivots)
    y = [_Q(0)] * total
    for i, bcol in enumerate(basis):
        y[bcol] = rhs[i]
    if raw:
        return LPResult(OPTIMAL, x=[y[j] - y[n + j] for j in range(n)], value=obj[total],
                        pivots=pivots)
    x = [_frac(y[j] - y[n + j]) for j in range(n)]
    return LPResult(OPTIMAL, x=x, value=_frac(obj[total]), pivots=pivots)


def minimize(c: Sequence, A_ub=(), b_ub=(), A_eq=(), b_eq=(), nvars=None) -> LPResult:
    res = maximize([-Fraction(v) for v in c], A_ub, b_ub, A_eq, b_eq, nvars=nvars)
    if res.value is not None:
        res.value = -res.value
    return res


def feasible_point(A_ub=(), b_ub=(), A_eq=(), b_eq=(), nvars: int = 0) -> Optional[list[Fraction]]:
    res = maximize([0] * nvars, A_ub, b_ub, A_eq, b_eq, nvars=nvars)
    return res.x if res.status == OPTIMAL else None


def strictly_feasible_point(A_gt: Sequence[Sequence], b_gt: Sequence,
                            A_ge: Sequence[Sequence] = (), b_ge: Sequence = (),
                            A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
                            nvars: int = 0) -> Optional[list[Fraction]]:
    """A point with ``A_gt x > b_gt``, ``A_ge x >= b_ge``, ``A_eq x = b_eq``, or None.

    Solved as ``max t`` s.t. ``A_gt x - t >= b_gt``, ``t <= 1``; strict
    feasibility holds iff the optimum is positive.
    """
    A_ub, b_ub = [], []
    for row, b in zip(A_gt, b_gt):
        A_ub.append([-Fraction(a) for a in row] + [1])
        b_ub.append(-Fraction(b))
    for row, b in zip(A_ge, b_ge):
        A_ub.append([-Fraction(a) for a in row] + [0])
        b_ub.append(-Fraction(b))
    A_ub.append([0] * nvars + [1])
    b_ub.append(1)
    eq = [list(row) + [0] for row in A_eq]
    res = maximize([0] * nvars + [1], A_ub, b_ub, eq, b_eq, nvars=nvars + 1)
    if res.status != OPTIMAL or res.value <= 0:
        return None
    return res.x[:nvars]
