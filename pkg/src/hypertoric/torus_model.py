"""Subtorus data, walls and circuits, regularity and smoothness tests.

A subtorus ``K`` of ``T^N`` is given by an integer ``d x N`` matrix ``B``
whose rows are a Z-basis of ``k_Z``.  Column ``i`` of ``B`` is the weight
``a_i`` (the restriction of the coordinate character ``u_i`` to ``K``) written
in the basis of ``k^*`` dual to the rows of ``B``.  All indices in this module
are 0-based; reports add one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import exact_linalg as la


class InvalidTorus(ValueError):
    pass


class UnsaturatedLattice(InvalidTorus):
    """Row lattice of ``B`` is not saturated; ``saturated`` holds a fix."""

    def __init__(self, message: str, saturated: la.IntMatrix):
        super().__init__(message)
        self.saturated = saturated


@dataclass(frozen=True)
class TorusSpec:
    N: int
    B: tuple[tuple[int, ...], ...]
    A: tuple[tuple[int, ...], ...]
    split_indices: tuple[int, ...] = ()
    empty_hyperplane_indices: tuple[int, ...] = ()

    @property
    def d(self) -> int:
        return len(self.B)

    @property
    def n(self) -> int:
        return self.N - self.d

    @property
    def weights(self) -> list[tuple[int, ...]]:
        return [tuple(row[i] for row in self.B) for i in range(self.N)]

    def weight(self, i: int) -> tuple[int, ...]:
        return tuple(row[i] for row in self.B)

    def gale_column(self, i: int) -> tuple[int, ...]:
        return tuple(row[i] for row in self.A)


@dataclass(frozen=True)
class Parameter:
    """``alpha`` and ``beta = beta_re + i beta_im`` in reduced units.

    Reduced units: the geometric ``alpha`` divided by ``pi`` and the geometric
    ``beta`` divided by ``-2 pi sqrt(-1)``.
    """

    alpha: tuple[Fraction, ...]
    beta_re: tuple[Fraction, ...]
    beta_im: tuple[Fraction, ...]

    @classmethod
    def make(cls, alpha: Sequence, beta_re: Optional[Sequence] = None,
             beta_im: Optional[Sequence] = None) -> "Parameter":
        d = len(alpha)
        zero = [0] * d
        return cls(tuple(Fraction(x) for x in alpha),
                   tuple(Fraction(x) for x in (beta_re if beta_re is not None else zero)),
                   tuple(Fraction(x) for x in (beta_im if beta_im is not None else zero)))

    def check(self, spec: TorusSpec) -> None:
        for name in ("alpha", "beta_re", "beta_im"):
            if len(getattr(self, name)) != spec.d:
                raise ValueError(f"{name} has length {len(getattr(self, name))}, expected d={spec.d}")


@dataclass(frozen=True)
class Wall:
    id: int
    span_set: frozenset[int]
    normal: tuple[int, ...]
    circuit: frozenset[int] = field(default_factory=frozenset)

    def pairing(self, v: Sequence) -> Fraction:
        return Fraction(la.dot(self.normal, v))

    def ambient_normal(self, spec: TorusSpec) -> list[int]:
        """``Y_s`` as an element of ``t^N_Z`` (coordinates in ``X_1..X_N``)."""
        return la.matvec(la.transpose(spec.B, spec.N), self.normal)


def validate_spec(B: Sequence[Sequence[int]], N: Optional[int] = None) -> TorusSpec:
    """Check ``B`` and derive the Gale dual and degenerate-index flags.

    A ``0 x N`` matrix is accepted as the trivial torus (``d = 0``).
    """
    rows = [[int(x) for x in r] for r in B]
    if N is None:
        if not rows:
            raise InvalidTorus("invalid torus: empty basis needs an explicit N")
        N = len(rows[0])
    if any(len(r) != N for r in rows):
        raise InvalidTorus("invalid torus: ragged basis matrix")
    if rows:
        if all(x == 0 for r in rows for x in r) or la.rank(rows) < len(rows):
            raise InvalidTorus("invalid torus: basis is zero or rank deficient")
        if not la.is_saturated(rows):
            raise UnsaturatedLattice("unsaturated lattice", la.saturation(rows))
    A = la.gale_dual(rows, ncols=N) if rows else la.identity(N)
    spec = TorusSpec(N=N, B=tuple(tuple(r) for r in rows), A=tuple(tuple(r) for r in A))
    split = tuple(i for i in range(N) if not any(spec.weight(i)))
    empty = tuple(i for i in range(N) if not any(spec.gale_column(i)))
    return TorusSpec(N=N, B=spec.B, A=spec.A, split_indices=split,
                     empty_hyperplane_indices=empty)


def saturate(B: Sequence[Sequence[int]]) -> la.IntMatrix:
    return la.saturation(B)


def enumerate_walls(spec: TorusSpec) -> list[Wall]:
    """One wall per hyperplane of ``k^*`` spanned by nonzero weights.

    For ``d = 1`` the single wall is ``{0}`` with empty span set.
    """
    d = spec.d
    if d == 0:
        return []
    nonzero = [i for i in range(spec.N) if any(spec.weight(i))]
    normals: dict[tuple[int, ...], None] = {}
    for subset in itertools.combinations(nonzero, d - 1):
        vecs = [list(spec.weight(i)) for i in subset]
        if vecs and la.rank(vecs) < d - 1:
            continue
        ker = la.rational_kernel(vecs, d)
        if len(ker) != 1:
            continue
        normals.setdefault(tuple(la.normalize_sign(la.primitive(ker[0]))), None)
    walls = []
    for Y in normals:
        J = frozenset(i for i in range(spec.N) if la.dot(spec.weight(i), Y) != 0)
        span = frozenset(i for i in nonzero if i not in J)
        walls.append((span, Y, J))
    walls.sort(key=lambda w: (len(w[2]), sorted(w[2])))
    return [Wall(id=k, span_set=s, normal=Y, circuit=J) for k, (s, Y, J) in enumerate(walls)]


def is_regular_value(spec: TorusSpec, param: Parameter,
                     walls: Optional[list[Wall]] = None) -> tuple[bool, list[Wall]]:
    """``(alpha, beta)`` is regular iff it avoids every ``W_s (x) R^3``."""
    param.check(spec)
    walls = enumerate_walls(spec) if walls is None else walls
    bad = [w for w in walls
           if w.pairing(param.alpha) == 0 and w.pairing(param.beta_re) == 0
           and w.pairing(param.beta_im) == 0]
    return not bad, bad


def is_smooth(spec: TorusSpec) -> tuple[bool, Optional[frozenset[int]]]:
    """Unimodular-minor test: every nonsingular ``d x d`` minor of ``B`` is +-1."""
    d = spec.d
    for J in itertools.combinations(range(spec.N), d):
        det = la.determinant([[row[j] for j in J] for row in spec.B])
        if det not in (0, 1, -1):
            return False, frozenset(J)
    return True, None


def lattice_condition_holds(spec: TorusSpec, J: Sequence[int]) -> bool:
    """Whether ``Z^N = k_Z + sum_{j not in J} Z X_j`` (checked by Smith form)."""
    gens = [list(r) for r in spec.B]
    for j in range(spec.N):
        if j not in J:
            gens.append([int(i == j) for i in range(spec.N)])
    snf = la.smith_normal_form(gens)
    return snf.rank == spec.N and all(f == 1 for f in snf.invariant_factors)


def is_smooth_bruteforce(spec: TorusSpec) -> tuple[bool, Optional[frozenset[int]]]:
    """The Z-module formulation, over every ``J`` whose weights form a basis."""
    d = spec.d
    for J in itertools.combinations(range(spec.N), d):
        if d and la.rank([list(spec.weight(j)) for j in J]) < d:
            continue
        if not lattice_condition_holds(spec, J):
            return False, frozenset(J)
    return True, None
