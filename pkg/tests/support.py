"""Seeded generators and brute-force oracles shared by the test modules."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from pathlib import Path

from hypertoric import exact_linalg as la
from hypertoric import lp
from hypertoric.arrangement import Arrangement, is_bounded_lp
from hypertoric.torus_model import Parameter, TorusSpec, is_regular_value, validate_spec

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "hypertoric" / "fixtures"
DATA = Path(__file__).resolve().parent / "data"

EXAMPLE2_B = [[1, 1, 0, 1, 0], [1, 0, 1, 0, 1]]

# offset added to every test seed; set from ``pytest --seed``
SEED = 0


def seeded(k: int) -> random.Random:
    return random.Random(k + SEED)


def example1(n: int) -> TorusSpec:
    return validate_spec([[1] * (n + 1)])


def example2() -> TorusSpec:
    return validate_spec(EXAMPLE2_B)


def random_spec(rng: random.Random, max_N: int = 8, max_d: int = 4, lo: int = -3,
                hi: int = 3, min_d: int = 1) -> TorusSpec:
    """Full-rank saturated ``B`` with entries in ``[lo, hi]``, resampled until valid."""
    while True:
        d = rng.randint(min_d, max_d)
        N = rng.randint(d + 1, max_N)
        B = [[rng.randint(lo, hi) for _ in range(N)] for _ in range(d)]
        if la.rank(B) < d or not la.is_saturated(B):
            continue
        return validate_spec(B)


def random_regular_alpha(rng: random.Random, spec: TorusSpec, bound: int = 7,
                         tries: int = 200):
    for _ in range(tries):
        alpha = [Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(spec.d)]
        if is_regular_value(spec, Parameter.make(alpha))[0]:
            return alpha
    return None


def sign_vector_oracle(arr: Arrangement):
    """Every realizable sign vector by brute force over ``{+,0,-}^N``.

    Returns ``{sign: (dim, bounded)}``.  Realizability is strict LP
    feasibility; the dimension is ``n`` minus the rank of the normals whose
    sign is zero; boundedness is decided by the recession-cone LP.
    """
    hyps = arr.hyperplanes
    n = arr.dim
    out = {}
    for sign in itertools.product((1, 0, -1), repeat=len(hyps)):
        A_gt, b_gt, A_eq, b_eq = [], [], [], []
        for s, H in zip(sign, hyps):
            if s == 0:
                A_eq.append(list(H.normal))
                b_eq.append(-H.offset)
            else:
                A_gt.append([s * x for x in H.normal])
                b_gt.append(-s * H.offset)
        if lp.strictly_feasible_point(A_gt, b_gt, A_eq=A_eq, b_eq=b_eq, nvars=n) is None:
            continue
        zero_rows = [list(H.normal) for s, H in zip(sign, hyps) if s == 0 and any(H.normal)]
        dim = n - (la.rank(zero_rows) if zero_rows else 0)
        out[sign] = (dim, is_bounded_lp([H.normal for H in hyps], sign, n))
    return out


def hilbert_oracle(relations, nvars: int, through: int) -> list[int]:
    """``dim`` of each graded piece by rank of all monomial multiples of all generators."""
    values = []
    for k in range(through + 1):
        monos = []
        for combo in itertools.combinations_with_replacement(range(nvars), k):
            m = [0] * nvars
            for j in combo:
                m[j] += 1
            monos.append(tuple(m))
        index = {m: i for i, m in enumerate(monos)}
        rows = []
        for poly in relations:
            deg = sum(next(iter(poly)))
            if deg > k:
                continue
            for combo in itertools.combinations_with_replacement(range(nvars), k - deg):
                row = [0] * len(monos)
                for mono, c in poly.items():
                    shifted = list(mono)
                    for j in combo:
                        shifted[j] += 1
                    row[index[tuple(shifted)]] += c
                rows.append(row)
        r = la.rank(rows) if rows else 0
        values.append(len(monos) - r)
    return values
