"""Chambers for fixed ``beta``, wall crossing, and the period map.

For fixed ``beta`` only the walls containing ``beta`` (the active walls) can
separate values of ``alpha`` with different quotients.  Chambers are cells of
the central arrangement of their normals ``Y_s`` and are labelled by sign
vectors, one entry per active wall in wall-id order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import exact_linalg as la
from . import lp
from .arrangement import enumerate_cells
from .torus_model import (Parameter, TorusSpec, Wall, enumerate_walls, is_regular_value,
                          validate_spec)

ISOMORPHISM = "isomorphism"
MUKAI_FLOP = "mukai_flop"


class WallCrossError(ValueError):
    pass


@dataclass(frozen=True)
class ChamberStructure:
    active: tuple[int, ...]
    walls: tuple[Wall, ...]
    chambers: tuple[tuple[tuple[int, ...], tuple[Fraction, ...]], ...]

    @property
    def count(self) -> int:
        return len(self.chambers)

    @property
    def signs(self) -> list[tuple[int, ...]]:
        return [s for s, _ in self.chambers]

    def adjacent_pairs(self) -> list[tuple[int, int, int]]:
        """``(i, j, wall id)`` for chambers separated by exactly one wall."""
        out = []
        for i, j in itertools.combinations(range(len(self.chambers)), 2):
            diff = [k for k, (a, b) in enumerate(zip(self.chambers[i][0], self.chambers[j][0]))
                    if a != b]
            if len(diff) == 1:
                out.append((i, j, self.active[diff[0]]))
        return out


@dataclass(frozen=True)
class ChamberLocation:
    sign: Optional[tuple[int, ...]]
    on_walls: tuple[int, ...] = ()

    @property
    def regular(self) -> bool:
        return not self.on_walls


@dataclass(frozen=True)
class CrossingReport:
    wall: int
    circuit: frozenset[int]
    normal: tuple[int, ...]
    kind: str
    fiber_projective_dim: Optional[int]
    codim: Optional[int]
    v0_spec: TorusSpec
    v0_parameter: Parameter
    v0_columns: tuple[int, ...]
    alpha_on_wall: tuple[Fraction, ...]
    notes: tuple[str, ...] = field(default=())


def _beta(spec: TorusSpec, beta_re, beta_im) -> tuple[list[Fraction], list[Fraction]]:
    zero = [Fraction(0)] * spec.d
    re = zero if beta_re is None else [Fraction(x) for x in beta_re]
    im = zero if beta_im is None else [Fraction(x) for x in beta_im]
    if len(re) != spec.d or len(im) != spec.d:
        raise ValueError(f"beta must have length d={spec.d}")
    return re, im


def active_walls(spec: TorusSpec, beta_re: Optional[Sequence] = None,
                 beta_im: Optional[Sequence] = None,
                 walls: Optional[list[Wall]] = None) -> list[int]:
    re, im = _beta(spec, beta_re, beta_im)
    walls = enumerate_walls(spec) if walls is None else walls
    return [w.id for w in walls if w.pairing(re) == 0 and w.pairing(im) == 0]


def enumerate_chambers(spec: TorusSpec, beta_re: Optional[Sequence] = None,
                       beta_im: Optional[Sequence] = None) -> ChamberStructure:
    walls = enumerate_walls(spec)
    active = active_walls(spec, beta_re, beta_im, walls)
    normals = [walls[s].normal for s in active]
    if spec.d == 0:
        return ChamberStructure((), tuple(walls), (((), ()),))
    cells = enumerate_cells(normals, [0] * len(normals), spec.d, chambers_only=True)
    chambers = tuple((tuple(sign), tuple(wit)) for sign, wit, _ in cells)
    return ChamberStructure(tuple(active), tuple(walls), chambers)


def count_chambers_bruteforce(spec: TorusSpec, beta_re: Optional[Sequence] = None,
                              beta_im: Optional[Sequence] = None) -> int:
    """Test every ``+-`` vector over the active walls for strict feasibility."""
    walls = enumerate_walls(spec)
    active = active_walls(spec, beta_re, beta_im, walls)
    if spec.d == 0:
        return 1
    count = 0
    for signs in itertools.product((1, -1), repeat=len(active)):
        rows = [[s * y for y in walls[k].normal] for s, k in zip(signs, active)]
        if lp.strictly_feasible_point(rows, [0] * len(rows), nvars=spec.d) is not None:
            count += 1
    return count


def chamber_of(spec: TorusSpec, alpha: Sequence, beta_re: Optional[Sequence] = None,
               beta_im: Optional[Sequence] = None) -> ChamberLocation:
    walls = enumerate_walls(spec)
    active = active_walls(spec, beta_re, beta_im, walls)
    alpha = [Fraction(a) for a in alpha]
    values = [walls[s].pairing(alpha) for s in active]
    on = tuple(s for s, v in zip(active, values) if v == 0)
    if on:
        return ChamberLocation(None, on)
    return ChamberLocation(tuple(1 if v > 0 else -1 for v in values))


def fixed_locus_spec(spec: TorusSpec, wall: Wall) -> tuple[TorusSpec, tuple[int, ...], bool]:
    """Spec of the quotient torus ``K / exp(R Y)`` acting on coordinates outside ``J``.

    Its lattice is the image of ``k_Z`` in ``Z^{N'}`` under restriction to the
    surviving columns.  Returns the spec, the surviving column indices and
    whether the image had to be saturated.
    """
    cols = tuple(i for i in range(spec.N) if i not in wall.circuit)
    restricted = [[row[i] for i in cols] for row in spec.B]
    rows = la.hermite_normal_form(restricted) if cols else []
    rows = [r for r in rows if any(r)]
    if len(rows) != spec.d - 1:
        raise WallCrossError(f"restricted lattice has rank {len(rows)}, expected {spec.d - 1}")
    saturated = True
    if rows and not la.is_saturated(rows):
        rows = la.saturation(rows)
        saturated = False
    return validate_spec(rows, N=len(cols)), cols, not saturated


def _project(spec: TorusSpec, cols: Sequence[int], v0: TorusSpec, vec: Sequence[Fraction]):
    """Coordinates of a functional vanishing on ``Y`` in the basis dual to ``v0``'s rows."""
    restricted_t = [[spec.B[k][i] for k in range(spec.d)] for i in cols]
    out = []
    for row in v0.B:
        c = la.solve_rational(restricted_t, row)
        if c is None:
            raise WallCrossError("fixed-locus row is not a restricted functional")
        out.append(sum(Fraction(ci) * vi for ci, vi in zip(c, vec)))
    return tuple(out)


def classify_crossing(spec: TorusSpec, alpha_plus: Sequence, alpha_minus: Sequence,
                      beta_re: Optional[Sequence] = None,
                      beta_im: Optional[Sequence] = None) -> CrossingReport:
    re, im = _beta(spec, beta_re, beta_im)
    walls = enumerate_walls(spec)
    for a in (alpha_plus, alpha_minus):
        ok, bad = is_regular_value(spec, Parameter.make(a, re, im), walls)
        if not ok:
            raise WallCrossError("alpha on wall(s) " + ", ".join(f"W_{w.id + 1}" for w in bad))
    active = active_walls(spec, re, im, walls)
    plus = chamber_of(spec, alpha_plus, re, im).sign
    minus = chamber_of(spec, alpha_minus, re, im).sign
    diff = [k for k in range(len(active)) if plus[k] != minus[k]]
    if not diff:
        raise WallCrossError("no wall crossed")
    if len(diff) > 1:
        raise WallCrossError("not adjacent: chambers differ across "
                             + ", ".join(f"W_{active[k] + 1}" for k in diff))
    wall = walls[active[diff[0]]]
    J = wall.circuit
    notes = []
    if len(J) >= 3:
        kind, fiber, codim = MUKAI_FLOP, len(J) - 1, len(J) - 1
    else:
        kind, fiber, codim = ISOMORPHISM, None, None
        if len(J) == 1:
            notes.append("one-element circuit: both sides are quotients by a free factor")
    ap = [Fraction(x) for x in alpha_plus]
    am = [Fraction(x) for x in alpha_minus]
    yp, ym = wall.pairing(ap), wall.pairing(am)
    t = yp / (yp - ym)
    a0 = tuple(p + t * (m - p) for p, m in zip(ap, am))
    v0, cols, resaturated = fixed_locus_spec(spec, wall)
    if resaturated:
        notes.append("restricted lattice was saturated")
    param = Parameter.make(_project(spec, cols, v0, a0), _project(spec, cols, v0, re),
                           _project(spec, cols, v0, im))
    return CrossingReport(wall=wall.id, circuit=J, normal=wall.normal, kind=kind,
                          fiber_projective_dim=fiber, codim=codim, v0_spec=v0,
                          v0_parameter=param, v0_columns=cols, alpha_on_wall=a0,
                          notes=tuple(notes))


@dataclass(frozen=True)
class PeriodReport:
    omega_1: tuple[Fraction, ...]
    omega_c_re: tuple[Fraction, ...]
    omega_c_im: tuple[Fraction, ...]


def period(spec: TorusSpec, alpha: Sequence, beta_re: Optional[Sequence] = None,
           beta_im: Optional[Sequence] = None) -> PeriodReport:
    """Cohomology classes of the Kähler forms in the basis dual to the rows of ``B``."""
    if spec.empty_hyperplane_indices:
        raise WallCrossError("period map hypothesis violated: coordinate "
                             + ", ".join(str(i + 1) for i in spec.empty_hyperplane_indices)
                             + " lies in k")
    re, im = _beta(spec, beta_re, beta_im)
    param = Parameter.make(alpha, re, im)
    ok, _ = is_regular_value(spec, param)
    if not ok:
        raise WallCrossError("not a regular value")
    return PeriodReport(param.alpha, param.beta_re, param.beta_im)
