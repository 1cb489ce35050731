"""The affine arrangement ``{F_i}`` in ``(t^n)^*`` and its bounded complex.

For a parameter ``alpha`` fix ``h`` with ``B h = alpha``.  A point ``p`` of
``(t^n)^* = Q^n`` has coordinates ``x_i(p) = <A_i, p> + h_i`` where ``A_i`` is
column ``i`` of the Gale dual; ``F_i = {x_i = 0}``.  Faces are recorded by sign
vectors ``sign(x_i)`` in ``{+1, 0, -1}``.  Every face carries an exact
relative-interior witness, and every sign vector is certified by it.
"""

from __future__ import annotations

import itertools
from math import comb
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import exact_linalg as la
from . import lp
from .lp import _Q
from .torus_model import TorusSpec

Sign = tuple[int, ...]


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _dot(a: Sequence[int], p: Sequence) -> "_Q":
    total = _Q(0)
    for x, y in zip(a, p):
        if x:
            total += x * y
    return total


@dataclass(frozen=True)
class Hyperplane:
    index: int
    normal: tuple[int, ...]
    offset: Fraction

    @property
    def empty(self) -> bool:
        return not any(self.normal) and self.offset != 0

    def value(self, p: Sequence) -> Fraction:
        return Fraction(la.dot(self.normal, p)) + self.offset


@dataclass(frozen=True)
class Arrangement:
    spec: TorusSpec
    alpha: tuple[Fraction, ...]
    h: tuple[Fraction, ...]
    hyperplanes: tuple[Hyperplane, ...]

    @property
    def dim(self) -> int:
        return self.spec.n

    @property
    def empty_indices(self) -> list[int]:
        return [H.index for H in self.hyperplanes if H.empty]

    def coordinates(self, p: Sequence) -> list[Fraction]:
        return [H.value(p) for H in self.hyperplanes]

    def sign_of(self, p: Sequence) -> Sign:
        return tuple(_sgn(x) for x in self.coordinates(p))


@dataclass(frozen=True)
class Face:
    sign: Sign
    dim: int
    bounded: bool
    witness: tuple[Fraction, ...]

    @property
    def affine_hull(self) -> tuple[int, ...]:
        """Indices whose hyperplanes cut out the affine hull."""
        return tuple(i for i, s in enumerate(self.sign) if s == 0)

    def is_face_of(self, other: "Face") -> bool:
        return self.dim < other.dim and compatible(self.sign, other.sign)


def compatible(sub: Sign, sup: Sign) -> bool:
    """``sub`` lies in the closure of ``sup``: zeros of ``sup`` are zeros of
    ``sub`` and the nonzero entries of ``sub`` agree with ``sup``."""
    return all(a == 0 or a == b for a, b in zip(sub, sup))


@dataclass
class PolyhedralComplex:
    faces: list[Face]
    d: list[int]
    incidence: list[tuple[int, int]] = field(default_factory=list)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.d))

    @property
    def max_dim(self) -> int:
        return max((f.dim for f in self.faces), default=-1)


@dataclass(frozen=True)
class BoundedChamber:
    sign: Sign
    vertices: tuple[tuple[Fraction, ...], ...]
    inequalities: tuple[tuple[tuple[int, ...], Fraction], ...]  # (c, c0): c.p + c0 >= 0


@dataclass
class CoreComponents:
    components: list[BoundedChamber]
    intersections: dict[tuple[int, int], Optional[Face]]


class ArrangementError(ValueError):
    pass


def build_arrangement(spec: TorusSpec, alpha: Sequence) -> Arrangement:
    alpha = tuple(Fraction(a) for a in alpha)
    if len(alpha) != spec.d:
        raise ArrangementError(f"alpha has length {len(alpha)}, expected {spec.d}")
    if spec.d:
        h = la.solve_rational([list(r) for r in spec.B], list(alpha))
    else:
        h = [Fraction(0)] * spec.N
    hyps = tuple(Hyperplane(i, spec.gale_column(i), h[i]) for i in range(spec.N))
    return Arrangement(spec, alpha, tuple(h), hyps)


# --------------------------------------------------------------------------
# cell enumeration
# --------------------------------------------------------------------------

class _Echelon:
    """Incremental RREF over Q used for span-membership tests."""

    def __init__(self, rows=(), pivots=()):
        self.rows = list(rows)
        self.pivots = list(pivots)

    def reduce(self, v):
        v = [_Q(x) for x in v]
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                f = v[c]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def extended(self, v) -> "_Echelon":
        r = self.reduce(v)
        c = next(i for i, x in enumerate(r) if x)
        r = [x / r[c] for x in r]
        rows = []
        for row in self.rows:
            if row[c]:
                f = row[c]
                row = [a - f * b for a, b in zip(row, r)]
            rows.append(row)
        return _Echelon(rows + [r], self.pivots + [c])

    @property
    def rank(self) -> int:
        return len(self.rows)


def enumerate_cells(normals: Sequence[Sequence[int]], offsets: Sequence, dim: int,
                    chambers_only: bool = False) -> list[tuple[Sign, tuple[Fraction, ...], int]]:
    """All realizable sign vectors of ``{<normal_i, p> + offset_i}`` on ``Q^dim``.

    Depth-first over the hyperplanes, splitting the current cell only when an
    exact LP (or a witness argument) proves the next hyperplane cuts it.
    Returns ``(sign, witness, cell dimension)`` triples.  With
    ``chambers_only`` zero signs are never produced.
    """
    normals = [tuple(int(x) for x in v) for v in normals]
    offsets = [_Q(x) for x in offsets]
    N = len(normals)
    out = []

    def recurse(j, signs, p, ech):
        if j == N:
            out.append((tuple(signs), tuple(lp._frac(x) for x in p), dim - ech.rank))
            return
        a, h = normals[j], offsets[j]
        v = _dot(a, p) + h
        if ech.contains(a):
            s = _sgn(v)
            if chambers_only and s == 0:
                return
            recurse(j + 1, signs + [s], p, ech)
            return
        if v == 0:
            # the hyperplane passes through the relative interior: move off it
            rows = [[lp._frac(x) for x in r] for r in ech.rows]
            direction = next(r for r in la.rational_kernel(rows, dim) if la.dot(a, r) != 0)
            direction = [_Q(x) for x in direction]
            slope = _dot(a, direction)
            bound = None
            for i in range(j):
                si = _dot(normals[i], direction)
                if signs[i] != 0 and si != 0:
                    vi = _dot(normals[i], p) + offsets[i]
                    lim = abs(vi / si)
                    bound = lim if bound is None else min(bound, lim)
            t = bound / 2 if bound is not None else _Q(1)
            step = [t * x for x in direction]
            p_plus = [x + y for x, y in zip(p, step)] if slope > 0 else [x - y for x, y in zip(p, step)]
            p_minus = [x - y for x, y in zip(p, step)] if slope > 0 else [x + y for x, y in zip(p, step)]
            recurse(j + 1, signs + [1], p_plus, ech)
            if not chambers_only:
                recurse(j + 1, signs + [0], p, ech.extended(a))
            recurse(j + 1, signs + [-1], p_minus, ech)
            return
        q = _opposite_point(normals, offsets, signs, j, dim, -_sgn(v))
        if q is None:
            recurse(j + 1, signs + [_sgn(v)], p, ech)
            return
        vq = _dot(a, q) + h
        t0 = v / (v - vq)
        t1 = (1 + t0) / 2
        p0 = [x + t0 * (y - x) for x, y in zip(p, q)]
        p1 = [x + t1 * (y - x) for x, y in zip(p, q)]
        s = _sgn(v)
        branches = {s: p, 0: p0, -s: p1}
        for sgn in (1, 0, -1):
            if sgn == 0:
                if not chambers_only:
                    recurse(j + 1, signs + [0], p0, ech.extended(a))
            else:
                recurse(j + 1, signs + [sgn], branches[sgn], ech)

    recurse(0, [], [_Q(0)] * dim, _Echelon())
    out.sort(key=lambda t: t[0])
    return out


def _opposite_point(normals, offsets, signs, j, dim, target):
    """A point of the closed current cell strictly on the ``target`` side of
    hyperplane ``j``, or None."""
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for i in range(j):
        a, h = normals[i], offsets[i]
        if not any(a):
            continue
        if signs[i] == 0:
            A_eq.append(a)
            b_eq.append(-h)
        else:  # signs[i] * (a.p + h) >= 0
            A_ub.append([-signs[i] * x for x in a])
            b_ub.append(signs[i] * h)
    a, h = normals[j], offsets[j]
    # cap target * (a.p + h) at 1 so the LP stays bounded
    A_ub.append([target * x for x in a])
    b_ub.append(1 - target * h)
    res = lp.maximize([target * x for x in a], A_ub, b_ub, A_eq, b_eq, nvars=dim, raw=True)
    if res.status != lp.OPTIMAL:
        return None
    if target * (_dot(a, res.x) + h) > 0:
        return res.x
    return None


def central_rays(normals: Sequence[Sequence[int]], dim: int) -> list[Sign]:
    """Sign vectors of the one-dimensional cells of the central arrangement."""
    nz = [i for i, a in enumerate(normals) if any(a)]
    rays = set()
    if dim == 0:
        return []
    for S in itertools.combinations(nz, dim - 1):
        rows = [list(normals[i]) for i in S]
        if rows and la.rank(rows) < dim - 1:
            continue
        ker = la.rational_kernel(rows, dim)
        if len(ker) != 1:
            continue
        r = ker[0]
        s = tuple(_sgn(la.dot(a, r)) for a in normals)
        rays.add(s)
        rays.add(tuple(-x for x in s))
    return sorted(rays)


def is_bounded_lp(normals: Sequence[Sequence[int]], sign: Sign, dim: int) -> bool:
    """Boundedness by LP on the recession cone of the closed cell.

    Maximizes ``sum_i sign_i <A_i, r>`` over the recession cone capped at 1;
    the cell is bounded iff the optimum is 0 (the normals span ``Q^dim``).
    """
    if dim == 0:
        return True
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    obj = [0] * dim
    for a, s in zip(normals, sign):
        if not any(a):
            continue
        if s == 0:
            A_eq.append(list(a))
            b_eq.append(0)
        else:
            A_ub.append([-s * x for x in a])
            b_ub.append(0)
            obj = [o + s * x for o, x in zip(obj, a)]
    A_ub.append(obj)
    b_ub.append(1)
    res = lp.maximize(obj, A_ub, b_ub, A_eq, b_eq, nvars=dim)
    return res.status == lp.OPTIMAL and res.value == 0


def enumerate_faces(arr: Arrangement) -> list[Face]:
    normals = [H.normal for H in arr.hyperplanes]
    offsets = [H.offset for H in arr.hyperplanes]
    cells = enumerate_cells(normals, offsets, arr.dim)
    rays = central_rays(normals, arr.dim)
    faces = []
    for sign, wit, dim in cells:
        bounded = not any(compatible(r, sign) for r in rays)
        faces.append(Face(sign=sign, dim=dim, bounded=bounded, witness=wit))
    return faces


def bounded_complex(arr: Arrangement, faces: Optional[list[Face]] = None) -> PolyhedralComplex:
    faces = enumerate_faces(arr) if faces is None else faces
    bounded = [f for f in faces if f.bounded]
    bounded.sort(key=lambda f: (f.dim, f.sign))
    top = max((f.dim for f in bounded), default=-1)
    d = [sum(1 for f in bounded if f.dim == k) for k in range(top + 1)]
    incidence = [(i, j) for i, f in enumerate(bounded) for j, g in enumerate(bounded)
                 if g.dim == f.dim + 1 and compatible(f.sign, g.sign)]
    return PolyhedralComplex(faces=bounded, d=d, incidence=incidence)


def _chamber(arr: Arrangement, eps: Sign, faces: list[Face]) -> BoundedChamber:
    verts = sorted(f.witness for f in faces if f.dim == 0 and compatible(f.sign, eps))
    ineqs = tuple((tuple(e * x for x in H.normal), e * H.offset)
                  for e, H in zip(eps, arr.hyperplanes))
    return BoundedChamber(sign=eps, vertices=tuple(verts), inequalities=ineqs)


def bounded_chambers(arr: Arrangement, faces: Optional[list[Face]] = None) -> list[BoundedChamber]:
    """``Theta_cpt``: full-support bounded cells, with exact vertices."""
    faces = enumerate_faces(arr) if faces is None else faces
    full = sorted((f for f in faces if f.bounded and 0 not in f.sign),
                  key=lambda f: tuple(-s for s in f.sign))
    return [_chamber(arr, f.sign, faces) for f in full]


def core_components(arr: Arrangement, faces: Optional[list[Face]] = None) -> CoreComponents:
    if arr.spec.split_indices:
        raise ArrangementError("split trivial H factors first")
    faces = enumerate_faces(arr) if faces is None else faces
    comps = bounded_chambers(arr, faces)
    inter: dict[tuple[int, int], Optional[Face]] = {}
    for a, b in itertools.combinations(range(len(comps)), 2):
        e1, e2 = comps[a].sign, comps[b].sign
        pattern = tuple(x if x == y else 0 for x, y in zip(e1, e2))
        cands = [f for f in faces if compatible(f.sign, pattern)]
        inter[(a, b)] = max(cands, key=lambda f: f.dim) if cands else None
    return CoreComponents(components=comps, intersections=inter)


def poincare_from_counts(d: Sequence[int]) -> list[int]:
    """Coefficients of ``sum_k d_k (t^2 - 1)^k`` in powers of ``t^2``."""
    top = len(d) - 1
    return [sum(d[k] * comb(k, j) * (-1) ** (k - j) for k in range(j, top + 1))
            for j in range(top + 1)]
