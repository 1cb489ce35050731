"""Semistability and closed-orbit oracles, and a numerical Kempf-Ness flow.

Everything is in reduced units: ``alpha`` is the real level with the factor
``pi`` divided out and the real moment map is ``mu_1 = sum (|z_i|^2 - |w_i|^2) a_i``.  After
rescaling the Lie algebra variable, the Kempf-Ness function along ``Exp(iX)``
becomes

    F(X) = <alpha, X> + sum |z_i|^2 exp(-<a_i, X>) + sum |w_i|^2 exp(<a_i, X>)

whose gradient is ``alpha - mu_1`` of the moved point.  The oracles are exact;
the flow is an independent floating-point check of the same dichotomy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import mpmath
import numpy as np

from . import exact_linalg as la
from . import lp
from .torus_model import TorusSpec

CONVERGED = "converged"
DIVERGED = "diverged"
MAX_ITER = "max_iter"

_LOG_FLOOR = -700.0  # exp() of anything smaller underflows a double
_X_BOUND = 1e3


@dataclass(frozen=True)
class ExactModuli:
    """Squared moduli ``|z_i|^2`` and ``|w_i|^2`` as nonnegative rationals."""

    z2: tuple[Fraction, ...]
    w2: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.z2) != len(self.w2):
            raise ValueError("z2 and w2 have different lengths")
        if any(x < 0 for x in self.z2) or any(x < 0 for x in self.w2):
            raise ValueError("squared moduli must be nonnegative")

    @classmethod
    def make(cls, z2: Sequence, w2: Sequence) -> "ExactModuli":
        return cls(tuple(Fraction(x) for x in z2), tuple(Fraction(x) for x in w2))

    @property
    def z_support(self) -> tuple[bool, ...]:
        return tuple(x > 0 for x in self.z2)

    @property
    def w_support(self) -> tuple[bool, ...]:
        return tuple(x > 0 for x in self.w2)

    def scaled(self, factor) -> "ExactModuli":
        f = Fraction(factor)
        return ExactModuli(tuple(x * f for x in self.z2), tuple(x * f for x in self.w2))


@dataclass(frozen=True)
class NumericPoint:
    z: tuple[complex, ...]
    w: tuple[complex, ...]

    def __post_init__(self):
        if len(self.z) != len(self.w):
            raise ValueError("z and w have different lengths")
        if not all(math.isfinite(abs(c)) for c in self.z + self.w):
            raise ValueError("point has non-finite entries")

    @classmethod
    def make(cls, z: Sequence, w: Sequence) -> "NumericPoint":
        return cls(tuple(complex(c) for c in z), tuple(complex(c) for c in w))

    def moduli(self) -> ExactModuli:
        """Exact squared moduli of the double-precision coordinates."""
        return ExactModuli(tuple(Fraction(abs(c) ** 2) for c in self.z),
                           tuple(Fraction(abs(c) ** 2) for c in self.w))


@dataclass
class FlowResult:
    status: str
    minimizer: list[float]
    residual: float
    iterations: int
    certificate: Optional[list[int]] = None
    exact_residual: Optional[float] = None
    warnings: list[str] = field(default_factory=list)

    @property
    def converged(self) -> bool:
        return self.status == CONVERGED


# --------------------------------------------------------------------------
# moment maps
# --------------------------------------------------------------------------

def moment_real(m: ExactModuli, spec: TorusSpec) -> list[Fraction]:
    _check_len(len(m.z2), spec)
    out = [Fraction(0)] * spec.d
    for i in range(spec.N):
        c = m.z2[i] - m.w2[i]
        if c:
            for k, a in enumerate(spec.weight(i)):
                out[k] += c * a
    return out


def moment_complex(p: NumericPoint, spec: TorusSpec) -> list[complex]:
    _check_len(len(p.z), spec)
    out = [0j] * spec.d
    for i in range(spec.N):
        c = p.z[i] * p.w[i]
        for k, a in enumerate(spec.weight(i)):
            out[k] += c * a
    return out


def _check_len(n: int, spec: TorusSpec) -> None:
    if n != spec.N:
        raise ValueError(f"point has {n} coordinates, expected N={spec.N}")


# --------------------------------------------------------------------------
# exact oracles
# --------------------------------------------------------------------------

def _generators(m: ExactModuli, spec: TorusSpec) -> list[tuple[int, ...]]:
    _check_len(len(m.z2), spec)
    gens = []
    for i in range(spec.N):
        a = spec.weight(i)
        if m.z2[i] > 0:
            gens.append(a)
        if m.w2[i] > 0:
            gens.append(tuple(-x for x in a))
    return gens


def _cone_constraints(gens, alpha):
    k = len(gens)
    d = len(alpha)
    A_eq = [[gens[j][r] for j in range(k)] for r in range(d)]
    A_ub = [[-int(i == j) for i in range(k)] for j in range(k)]
    return A_ub, [0] * k, A_eq, [Fraction(a) for a in alpha]


def is_semistable(m: ExactModuli, alpha: Sequence, spec: TorusSpec) -> bool:
    """``alpha`` lies in the cone spanned by the active signed weights."""
    gens = _generators(m, spec)
    if not gens:
        return not any(Fraction(a) for a in alpha)
    A_ub, b_ub, A_eq, b_eq = _cone_constraints(gens, alpha)
    return lp.feasible_point(A_ub, b_ub, A_eq, b_eq, nvars=len(gens)) is not None


def has_closed_orbit(m: ExactModuli, alpha: Sequence, spec: TorusSpec) -> bool:
    """``alpha`` is a strictly positive combination of the active signed weights.

    Each coefficient is maximized separately; if every maximum is positive
    (or unbounded) the average of the maximizers is a strictly positive
    solution.
    """
    if not is_semistable(m, alpha, spec):
        return False
    gens = _generators(m, spec)
    if not gens:
        return True
    A_ub, b_ub, A_eq, b_eq = _cone_constraints(gens, alpha)
    k = len(gens)
    for j in range(k):
        res = lp.maximize([int(i == j) for i in range(k)], A_ub, b_ub, A_eq, b_eq, nvars=k)
        if res.status == lp.OPTIMAL and res.value <= 0:
            return False
    return True


def _integral(v: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    return la.primitive([int(Fraction(x) * den) for x in v])


def destabilizing_direction(m: ExactModuli, alpha: Sequence, spec: TorusSpec) -> Optional[list[int]]:
    """A primitive ``X`` pairing nonnegatively with every active signed weight.

    ``<alpha, X> < 0`` certifies that the point is unstable.  Otherwise
    ``<alpha, X> = 0`` and ``X`` leaves the isotropy subspace, certifying a
    non-closed orbit.  None when the orbit is closed.
    """
    gens = _generators(m, spec)
    d = spec.d
    alpha = [Fraction(a) for a in alpha]
    if d == 0:
        return None
    nonneg = [[-x for x in g] for g in gens]
    zeros = [0] * len(gens)
    res = lp.minimize(alpha, nonneg + [[-a for a in alpha]], zeros + [1], nvars=d)
    if res.status == lp.OPTIMAL and res.value < 0:
        return _integral(res.x)
    if not gens:
        return None
    total = [sum(g[r] for g in gens) for r in range(d)]
    res = lp.maximize(total, nonneg + [alpha, total], zeros + [0, 1], nvars=d)
    if res.status == lp.OPTIMAL and res.value > 0:
        return _integral(res.x)
    return None


@dataclass(frozen=True)
class StabilityReport:
    semistable: bool
    closed_orbit: bool
    direction: Optional[list[int]]
    reason: str


def stability_report(m: ExactModuli, alpha: Sequence, spec: TorusSpec) -> StabilityReport:
    semi = is_semistable(m, alpha, spec)
    closed = semi and has_closed_orbit(m, alpha, spec)
    direction = None if closed else destabilizing_direction(m, alpha, spec)
    if closed:
        reason = "alpha is in the open cone of active weights"
    elif semi:
        reason = "alpha lies on a proper face of the cone of active weights"
    else:
        reason = "alpha is outside the cone of active weights"
    return StabilityReport(semi, closed, direction, reason)


# --------------------------------------------------------------------------
# Kempf-Ness descent
# --------------------------------------------------------------------------

def kempf_ness_descent(p: Union[NumericPoint, ExactModuli], alpha: Sequence, spec: TorusSpec,
                       tol: float = 1e-8, max_iter: int = 10 ** 5,
                       beta: Optional[Sequence[complex]] = None) -> FlowResult:
    """Minimize ``F`` from ``X = 0`` by damped Newton steps with Armijo backtracking.

    ``F`` is affine along the isotropy subspace of the point, so the search
    runs on its orthogonal complement and a nonzero slope of ``F`` along the
    isotropy directions is reported as divergence right away.  Elsewhere the
    flow is called divergent once ``|X|`` exceeds ``1e3`` or an active scaled
    modulus underflows, since neither happens near a minimum.
    """
    warnings: list[str] = []
    if isinstance(p, NumericPoint):
        moduli = p.moduli()
        z2 = np.array([abs(c) ** 2 for c in p.z], dtype=float)
        w2 = np.array([abs(c) ** 2 for c in p.w], dtype=float)
        if beta is not None:
            mc = moment_complex(p, spec)
            if any(abs(x - complex(b)) > tol for x, b in zip(mc, beta)):
                warnings.append("complex moment map differs from beta")
    else:
        moduli = p
        z2 = np.array([float(x) for x in p.z2])
        w2 = np.array([float(x) for x in p.w2])
    _check_len(len(z2), spec)
    d = spec.d
    a_hat = np.array([float(Fraction(a)) for a in alpha], dtype=float)

    def certificate():
        return destabilizing_direction(moduli, alpha, spec)

    if d == 0:
        return FlowResult(CONVERGED, [], 0.0, 0, warnings=warnings, exact_residual=0.0)

    weights = np.array([spec.weight(i) for i in range(spec.N)], dtype=float)
    rows, signs, logs = [], [], []
    for i in range(spec.N):
        if z2[i] > 0:
            rows.append(weights[i]); signs.append(-1.0); logs.append(math.log(z2[i]))
        if w2[i] > 0:
            rows.append(weights[i]); signs.append(1.0); logs.append(math.log(w2[i]))
    G = np.array(rows, dtype=float).reshape(len(rows), d)
    # exponent of term k is logs[k] + signs[k] * <a_k, X>
    S = G * np.array(signs).reshape(-1, 1) if rows else G
    logs = np.array(logs, dtype=float)

    if rows:
        _, sv, vt = np.linalg.svd(G)
        r = int(np.sum(sv > 1e-9 * max(sv[0], 1.0)))
    else:
        vt, r = np.eye(d), 0
    Q = vt[:r].T           # range of the active weights
    P = vt[r:].T           # isotropy directions

    slope = P.T @ a_hat if P.shape[1] else np.zeros(0)
    if np.linalg.norm(slope) > tol:
        return FlowResult(DIVERGED, [0.0] * d, float(np.linalg.norm(a_hat)), 0,
                          certificate=certificate(), warnings=warnings)
    if r == 0:
        res = float(np.linalg.norm(a_hat))
        return FlowResult(CONVERGED, [0.0] * d, res, 0, warnings=warnings, exact_residual=res)

    SQ = S @ Q
    aQ = Q.T @ a_hat

    def evaluate(y):
        # trial points of the line search may overflow; they are then rejected
        with np.errstate(over="ignore", invalid="ignore"):
            expo = logs + SQ @ y
            terms = np.exp(expo)
            f = float(aQ @ y + terms.sum())
            g = aQ + SQ.T @ terms
        return f, g, terms, expo

    row_norms = np.linalg.norm(SQ, axis=1)
    y = np.zeros(r)
    f, g, terms, expo = evaluate(y)
    it = 0
    flat = False
    h0 = None
    while it < max_iter:
        H = (SQ.T * terms) @ SQ
        lam, U = np.linalg.eigh(H)
        if h0 is None:
            h0 = float(lam[-1])
        # curvature is judged against the scale of the data at X = 0
        resolved = lam > 1e-12 * max(float(lam[-1]), h0)
        flat = not resolved.all()
        gnorm = _norm(g)
        if gnorm <= tol:
            # a strongly convex F with gradient g has its minimizer within |g|/lam_min
            if not flat and gnorm <= 1e-6 * float(lam[0]):
                break
            if flat:
                # stationary to working precision yet flat: the infimum is not attained
                return FlowResult(DIVERGED, (Q @ y).tolist(), gnorm, it,
                                  certificate=certificate(), warnings=warnings)
        gu = U.T @ g
        noise = 1e-14 * (float(np.linalg.norm(aQ)) + float(terms @ row_norms))
        flat_step = np.where(np.abs(gu) > noise, -np.sign(gu), 0.0)
        # Newton on resolved eigendirections, unit descent steps along flat ones
        step = U @ np.where(resolved, -gu / np.where(resolved, lam, 1.0), flat_step)
        slope_g = float(g @ step)
        if slope_g >= 0:
            break
        slack = 1e-13 * max(1.0, abs(f))
        t = 1.0
        while True:
            y_new = y + t * step
            f_new, g_new, terms_new, expo_new = evaluate(y_new)
            if np.isfinite(f_new) and f_new <= f + 1e-4 * t * slope_g + slack:
                break
            t *= 0.5
            if t < 1e-20:
                break
        it += 1
        if t < 1e-20:
            break
        y, f, g, terms, expo = y_new, f_new, g_new, terms_new, expo_new
        if np.linalg.norm(y) > _X_BOUND or expo.min() < _LOG_FLOOR:
            X = Q @ y
            return FlowResult(DIVERGED, X.tolist(), _norm(g), it,
                              certificate=certificate(), warnings=warnings)
    else:
        X = Q @ y
        return FlowResult(MAX_ITER, X.tolist(), _norm(g), it,
                          certificate=certificate(), warnings=warnings)

    X = Q @ y
    gnorm = _norm(g)
    if gnorm > tol or flat:
        # stalled in double precision short of a certified minimum
        return FlowResult(DIVERGED if flat else MAX_ITER, X.tolist(), gnorm, it,
                          certificate=certificate(), warnings=warnings)
    return FlowResult(CONVERGED, X.tolist(), gnorm, it, warnings=warnings,
                      exact_residual=exact_residual(moduli, alpha, spec, X.tolist()))


def _norm(v: np.ndarray) -> float:
    """Euclidean norm without underflow of the squares."""
    m = float(np.abs(v).max()) if v.size else 0.0
    return m * float(np.linalg.norm(v / m)) if m > 0 else 0.0


def exact_residual(m: ExactModuli, alpha: Sequence, spec: TorusSpec, X: Sequence[float],
                   digits: int = 50) -> float:
    """``|mu_1(scaled moduli) - alpha|`` evaluated with ``digits`` significant digits."""
    with mpmath.workdps(digits):
        Xm = [mpmath.mpf(x) for x in X]
        mu = [mpmath.mpf(0)] * spec.d
        for i in range(spec.N):
            a = spec.weight(i)
            pair = mpmath.fsum(mpmath.mpf(ak) * xk for ak, xk in zip(a, Xm))
            c = (mpmath.mpf(m.z2[i].numerator) / m.z2[i].denominator * mpmath.exp(-pair)
                 - mpmath.mpf(m.w2[i].numerator) / m.w2[i].denominator * mpmath.exp(pair))
            for k in range(spec.d):
                mu[k] += c * a[k]
        diff = [mu[k] - mpmath.mpf(Fraction(alpha[k]).numerator) / Fraction(alpha[k]).denominator
                for k in range(spec.d)]
        return float(mpmath.sqrt(mpmath.fsum(x * x for x in diff)))
