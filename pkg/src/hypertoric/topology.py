"""Poincaré polynomials and presentations of the cohomology ring.

Three independent routes to the Betti numbers of ``X(alpha, 0)``:

* face counts of the bounded complex, ``P_t = sum_k d_k (t^2 - 1)^k``;
* the presentation whose monomial relations are the index sets ``J`` with
  empty intersection ``F_J``;
* the presentation whose monomial relations are the wall circuits ``J_s``.

The two presentations are reduced to ``Q[v_1..v_d]`` by sending ``u_i`` to the
weight ``a_i`` and their Hilbert functions are computed by exact integer row
reduction, degree by degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from . import exact_linalg as la
from . import lp
from .arrangement import (Arrangement, bounded_chambers, bounded_complex, build_arrangement,
                          enumerate_faces, poincare_from_counts)
from .torus_model import Parameter, TorusSpec, enumerate_walls, is_regular_value, is_smooth

CIRCUITS = "circuits"
EMPTY_INTERSECTIONS = "empty_intersections"


class TopologyError(ValueError):
    pass


@dataclass(frozen=True)
class PoincarePolynomial:
    """Coefficients ``b_0, b_2, ..., b_2n`` of powers of ``t^2``."""

    coefficients: tuple[int, ...]
    face_counts: tuple[int, ...] = ()

    def __str__(self) -> str:
        terms = []
        for k, b in enumerate(self.coefficients):
            if b == 0:
                continue
            mono = "" if k == 0 else ("t^2" if k == 1 else f"t^{2 * k}")
            if k == 0:
                terms.append(str(b))
            else:
                terms.append(mono if b == 1 else f"{b}{mono}")
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class RingPresentation:
    nvars: int
    linear_relations: tuple[tuple[int, ...], ...]
    monomial_relations: tuple[frozenset[int], ...]
    coefficient_validity: str  # "integral" (smooth) or "rational" (orbifold)
    mode: str = CIRCUITS
    weights: tuple[tuple[int, ...], ...] = field(default=(), repr=False)

    def monomial_strings(self) -> list[str]:
        return ["".join(f"u_{i + 1}" for i in sorted(J)) for J in self.monomial_relations]

    def linear_strings(self) -> list[str]:
        return [_linear_string(r, "u_{}") for r in self.linear_relations]


Polynomial = dict[tuple[int, ...], int]


@dataclass(frozen=True)
class ReducedPresentation:
    """Quotient of ``Q[v_1..v_d]`` by products of linear forms."""

    nvars: int
    factored: tuple[tuple[tuple[int, ...], ...], ...]
    coefficient_validity: str = "integral"

    @property
    def relations(self) -> list[Polynomial]:
        return [p for p in (_product(f, self.nvars) for f in self.factored) if p]

    def variable_names(self) -> list[str]:
        return ["v"] if self.nvars == 1 else [f"v_{i + 1}" for i in range(self.nvars)]

    def __str__(self) -> str:
        ring = "Z" if self.coefficient_validity == "integral" else "Q"
        names = self.variable_names()
        base = f"{ring}[{','.join(names)}]" if names else ring
        rels = [_factored_string(f, names) for f in self.factored if _product(f, self.nvars)]
        if not rels:
            return base
        return f"{base}/({', '.join(rels)})"


@dataclass(frozen=True)
class HilbertFunction:
    values: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        return self.values[k] if k < len(self.values) else 0


# --------------------------------------------------------------------------
# formatting helpers
# --------------------------------------------------------------------------

def _linear_string(coeffs: Sequence[int], fmt: str) -> str:
    out = ""
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        name = fmt.format(i + 1) if "{}" in fmt else fmt[i]
        mag = "" if abs(c) == 1 else str(abs(c))
        if not out:
            out = ("-" if c < 0 else "") + mag + name
        else:
            out += ("-" if c < 0 else "+") + mag + name
    return out or "0"


def _factored_string(forms: Sequence[Sequence[int]], names: list[str]) -> str:
    groups: dict[tuple[int, ...], int] = {}
    for f in forms:
        groups[tuple(f)] = groups.get(tuple(f), 0) + 1
    parts = []
    for f, e in groups.items():
        s = _linear_string(f, names)
        if sum(1 for c in f if c) > 1 or any(c not in (0, 1) for c in f):
            s = f"({s})"
        parts.append(s if e == 1 else f"{s}^{e}")
    return "".join(parts)


def _product(forms: Iterable[Sequence[int]], nvars: int) -> Polynomial:
    poly: Polynomial = {(0,) * nvars: 1}
    for f in forms:
        nxt: Polynomial = {}
        for mono, c in poly.items():
            for j, a in enumerate(f):
                if a:
                    m = list(mono)
                    m[j] += 1
                    m = tuple(m)
                    nxt[m] = nxt.get(m, 0) + c * a
        poly = {m: c for m, c in nxt.items() if c}
    return poly


# --------------------------------------------------------------------------
# Poincaré polynomial
# --------------------------------------------------------------------------

def _require_regular(spec: TorusSpec, alpha: Sequence) -> Parameter:
    param = Parameter.make(alpha)
    param.check(spec)
    ok, _ = is_regular_value(spec, param)
    if not ok:
        raise TopologyError("not a regular value")
    return param


def poincare_polynomial(spec: TorusSpec, alpha: Sequence,
                        arr: Optional[Arrangement] = None) -> PoincarePolynomial:
    _require_regular(spec, alpha)
    arr = build_arrangement(spec, alpha) if arr is None else arr
    cx = bounded_complex(arr)
    coeffs = poincare_from_counts(cx.d)
    if any(c < 0 for c in coeffs):
        raise TopologyError(f"negative Betti number from face counts {cx.d}")
    return PoincarePolynomial(tuple(coeffs), tuple(cx.d))


# --------------------------------------------------------------------------
# presentations
# --------------------------------------------------------------------------

def _coefficients(spec: TorusSpec) -> str:
    return "integral" if is_smooth(spec)[0] else "rational"


def _minimal_sets(N: int, is_relation) -> list[frozenset[int]]:
    found: list[frozenset[int]] = []
    for size in range(1, N + 1):
        for J in itertools.combinations(range(N), size):
            Js = frozenset(J)
            if any(f <= Js for f in found):
                continue
            if is_relation(Js):
                found.append(Js)
    return found


def empty_intersection_sets(spec: TorusSpec, alpha: Sequence) -> list[frozenset[int]]:
    """Inclusion-minimal ``J`` with ``F_J`` empty.

    ``F_J`` is the affine subspace ``{x : B x = alpha, x_J = 0}``; it is empty
    iff ``alpha`` is outside the span of the weights ``a_i``, ``i`` not in ``J``.
    """
    alpha = [Fraction(a) for a in alpha]
    if spec.d == 0:
        return []

    def empty(J):
        cols = [i for i in range(spec.N) if i not in J]
        if not cols:
            return any(alpha)
        sub = [[row[i] for i in cols] for row in spec.B]
        return la.solve_rational(sub, alpha) is None

    return _minimal_sets(spec.N, empty)


def cohomology_presentation(spec: TorusSpec, mode: str = CIRCUITS,
                            alpha: Optional[Sequence] = None) -> RingPresentation:
    linear = tuple(tuple(r) for r in la.integer_kernel_basis(spec.B, ncols=spec.N))
    if mode == CIRCUITS:
        monos = tuple(w.circuit for w in enumerate_walls(spec))
    elif mode in (EMPTY_INTERSECTIONS, "intersections"):
        if alpha is None:
            raise TopologyError("empty_intersections mode requires alpha")
        _require_regular(spec, alpha)
        monos = tuple(empty_intersection_sets(spec, alpha))
        mode = EMPTY_INTERSECTIONS
    else:
        raise TopologyError(f"unknown mode {mode!r}")
    return RingPresentation(nvars=spec.N, linear_relations=linear, monomial_relations=monos,
                            coefficient_validity=_coefficients(spec), mode=mode,
                            weights=tuple(spec.weights))


def reduce_presentation(pres: RingPresentation) -> ReducedPresentation:
    """Eliminate the linear relations: ``u_i -> a_i`` in ``Q[v_1..v_d]``."""
    d = len(pres.weights[0]) if pres.weights else 0
    factored = tuple(tuple(pres.weights[i] for i in sorted(J)) for J in pres.monomial_relations)
    return ReducedPresentation(nvars=d, factored=factored,
                               coefficient_validity=pres.coefficient_validity)


# --------------------------------------------------------------------------
# Hilbert function
# --------------------------------------------------------------------------

def _monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        m = [0] * nvars
        for j in combo:
            m[j] += 1
        out.append(tuple(m))
    out.sort(reverse=True)
    return out


class _IntEchelon:
    """Integer rows with distinct leading columns (fraction-free)."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.by_lead: dict[int, list[int]] = {}

    def add(self, row: list[int]) -> bool:
        row = list(row)
        while True:
            lead = next((i for i, x in enumerate(row) if x), None)
            if lead is None:
                return False
            piv = self.by_lead.get(lead)
            if piv is None:
                g = 0
                for x in row:
                    g = gcd(g, x)
                if row[lead] < 0:
                    g = -g
                self.by_lead[lead] = [x // g for x in row]
                return True
            a, b = piv[lead], row[lead]
            row = [a * x - b * y for x, y in zip(row, piv)]

    @property
    def rank(self) -> int:
        return len(self.by_lead)

    def rows(self) -> list[list[int]]:
        return [self.by_lead[k] for k in sorted(self.by_lead)]


def hilbert_function(pres: ReducedPresentation, through_degree: int) -> HilbertFunction:
    """``dim_Q`` of each graded piece of the reduced ring, degrees ``0..through_degree``."""
    m = pres.nvars
    rels = pres.relations
    by_degree: dict[int, list[Polynomial]] = {}
    for poly in rels:
        deg = sum(next(iter(poly)))
        by_degree.setdefault(deg, []).append(poly)
    values = []
    prev_basis: list[list[int]] = []
    prev_monos: list[tuple[int, ...]] = []
    for k in range(through_degree + 1):
        monos = _monomials(m, k)
        index = {mono: i for i, mono in enumerate(monos)}
        ech = _IntEchelon(len(monos))
        full = False
        for row in prev_basis:
            for j in range(m):
                new = [0] * len(monos)
                for c, mono in zip(row, prev_monos):
                    if c:
                        shifted = list(mono)
                        shifted[j] += 1
                        new[index[tuple(shifted)]] += c
                ech.add(new)
                if ech.rank == len(monos):
                    full = True
                    break
            if full:
                break
        if not full:
            for poly in by_degree.get(k, []):
                row = [0] * len(monos)
                for mono, c in poly.items():
                    row[index[mono]] += c
                ech.add(row)
                if ech.rank == len(monos):
                    break
        values.append(len(monos) - ech.rank)
        prev_basis, prev_monos = ech.rows(), monos
    return HilbertFunction(tuple(values))


# --------------------------------------------------------------------------
# components of the core
# --------------------------------------------------------------------------

def component_ideal(spec: TorusSpec, alpha: Sequence, epsilon: Sequence[int],
                    arr: Optional[Arrangement] = None) -> RingPresentation:
    """Presentation of ``H^*(M_eps)``: monomials for minimal ``J`` with
    ``F_J`` disjoint from the closed polytope ``Delta_eps``."""
    arr = build_arrangement(spec, alpha) if arr is None else arr
    eps = tuple(int(e) for e in epsilon)
    if eps not in {c.sign for c in bounded_chambers(arr)}:
        raise TopologyError(f"sign vector {eps} is not a bounded chamber")
    hyps = arr.hyperplanes
    n = arr.dim

    def disjoint(J):
        A_ub, b_ub, A_eq, b_eq = [], [], [], []
        for H, e in zip(hyps, eps):
            if H.index in J:
                A_eq.append(list(H.normal))
                b_eq.append(-H.offset)
            else:
                A_ub.append([-e * x for x in H.normal])
                b_ub.append(e * H.offset)
        return lp.feasible_point(A_ub, b_ub, A_eq, b_eq, nvars=n) is None

    monos = tuple(_minimal_sets(spec.N, disjoint))
    linear = tuple(tuple(r) for r in la.integer_kernel_basis(spec.B, ncols=spec.N))
    return RingPresentation(nvars=spec.N, linear_relations=linear, monomial_relations=monos,
                            coefficient_validity=_coefficients(spec), mode="component",
                            weights=tuple(spec.weights))


@dataclass(frozen=True)
class KirwanCheck:
    surjective: bool
    total_dimension: int
    vertex_count: int
    top_degree: int
    max_face_dim: int


def kirwan_surjectivity_check(spec: TorusSpec, alpha: Sequence) -> KirwanCheck:
    """Degree-one generation by ``u_1..u_N`` accounts for all of ``H^*``."""
    _require_regular(spec, alpha)
    arr = build_arrangement(spec, alpha)
    cx = bounded_complex(arr)
    betti = poincare_from_counts(cx.d)
    hf = hilbert_function(reduce_presentation(cohomology_presentation(spec, CIRCUITS)),
                          len(betti))
    total = sum(hf.values)
    top = max((k for k, v in enumerate(hf.values) if v), default=-1)
    ok = (list(hf.values[:len(betti)]) == betti and hf[len(betti)] == 0
          and total == cx.d[0] and top == cx.max_dim)
    return KirwanCheck(ok, total, cx.d[0], top, cx.max_dim)
