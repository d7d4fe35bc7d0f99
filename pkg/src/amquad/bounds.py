"""Closed-form error bounds for the three-point quadrature functional.

Notation: ``c_L = lam*(1-mu)`` and ``c_R = 1 - lam*mu`` are the zeros of
the left and right kernels, ``g = |f'|**q``.  Each bound picks its left
coefficient by comparing ``mu`` with ``c_L`` and its right coefficient by
comparing ``mu`` with ``c_R``; the three case labels are just the
combinations that can occur.

* ``bound_thm22`` - power-mean bound with eps/delta/beta coefficients.
* ``bound_thm24`` - Hoelder bound whose A, B use the Hadamard-type upper
  estimate of ``g`` on the two sub-segments.
* ``bound_thm26`` - Hoelder bound whose A2, B2 use endpoint data only.

The corollary functions re-derive special cases from their own closed forms
so they can be compared against the general bounds.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .convexity import PathCertificate, check_hadamard_hypothesis, check_path_hypothesis
from .errors import DomainError, EvaluationError
from .funcmodel import (
    THM22,
    THM24,
    THM26,
    ParamSet,
    TestFunction,
    require_domain,
    validate_params,
)
from .quadrature import reference_integral, true_error

VIOLATION_SLACK = 1e-8
_EXACT = 1e-15


class CaseId(str, enum.Enum):
    C1 = "C1"  # lam(1-mu) <= mu <= 1-lam*mu
    C2 = "C2"  # mu <= lam(1-mu) <= 1-lam*mu
    C3 = "C3"  # lam(1-mu) <= 1-lam*mu <= mu

    def __str__(self) -> str:
        return self.value


def pivots(lam: float, mu: float) -> tuple[float, float]:
    return lam * (1.0 - mu), 1.0 - lam * mu


def _left_low(lam: float, mu: float) -> bool:
    """True when ``mu <= c_L`` (kernel stays non-negative on ``[0, mu]``)."""
    return mu <= lam * (1.0 - mu)


def _right_low(lam: float, mu: float) -> bool:
    """True when ``mu <= c_R`` (kernel changes sign inside ``[mu, 1]``)."""
    return mu <= 1.0 - lam * mu


def select_case(p: ParamSet) -> CaseId:
    if _left_low(p.lam, p.mu):
        return CaseId.C2
    if _right_low(p.lam, p.mu):
        return CaseId.C1
    return CaseId.C3


def _require(p: ParamSet, theorem: str) -> None:
    res = validate_params(p, theorem)
    if not res:
        raise ValueError("invalid parameters: " + "; ".join(res.violations))


def _nonneg(x: float) -> float:
    # closed forms of non-negative integrals can dip below zero by roundoff
    return x if x > 0.0 else 0.0


def _is(x: float, v: float) -> bool:
    return abs(x - v) <= _EXACT


# --------------------------------------------------------------------------
# power-mean coefficients
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CoefficientSet22:
    eps1: float
    eps2: float
    eps3: float
    eps4: float
    delta1: float
    delta2: float
    delta3: float
    delta4: float
    beta1: float
    beta2: float
    beta3: float
    beta4: float
    case: CaseId
    left_low: bool
    right_low: bool

    def left(self) -> tuple[float, float, float]:
        """``(eps, delta_a, delta_b)`` active on ``[0, mu]``."""
        if self.left_low:
            return self.eps1, self.delta1, self.delta2
        return self.eps2, self.delta3, self.delta4

    def right(self) -> tuple[float, float, float]:
        """``(eps, beta_a, beta_b)`` active on ``[mu, 1]``."""
        if self.right_low:
            return self.eps3, self.beta1, self.beta2
        return self.eps4, self.beta3, self.beta4

    def as_dict(self) -> dict[str, float]:
        return {
            name: getattr(self, name)
            for name in (
                "eps1", "eps2", "eps3", "eps4",
                "delta1", "delta2", "delta3", "delta4",
                "beta1", "beta2", "beta3", "beta4",
            )
        }


def coeffs22(lam: float, mu: float, alpha: float) -> CoefficientSet22:
    """All twelve eps/delta/beta closed forms at ``(lam, mu, alpha)``."""
    cl = lam * (1.0 - mu)
    cr = 1.0 - lam * mu
    a1, a2 = alpha + 1.0, alpha + 2.0

    eps1 = -mu**2 / 2.0 + cl * mu
    eps2 = cl**2 - eps1
    eps3 = cr**2 - cr * (1.0 + mu) + (1.0 + mu**2) / 2.0
    eps4 = (1.0 - mu**2) / 2.0 - cr * (1.0 - mu)

    delta1 = cl * mu**a1 / a1 - mu**a2 / a2
    delta2 = cl * mu - mu**2 / 2.0 - delta1
    delta3 = 2.0 * cl**a2 / (a1 * a2) - cl * mu**a1 / a1 + mu**a2 / a2
    delta4 = cl**2 - lam * mu * (1.0 - mu) + mu**2 / 2.0 - delta3

    beta1 = 2.0 * cr**a2 / (a1 * a2) - cr * (1.0 + mu**a1) / a1 + (1.0 + mu**a2) / a2
    beta2 = cr**2 - cr * (1.0 + mu) + (1.0 + mu**2) / 2.0 - beta1
    beta3 = (1.0 - mu**a2) / a2 - cr * (1.0 - mu**a1) / a1
    beta4 = cr * (mu - 1.0) + (1.0 - mu**2) / 2.0 - beta3

    left_low = _left_low(lam, mu)
    right_low = _right_low(lam, mu)
    case = CaseId.C2 if left_low else (CaseId.C1 if right_low else CaseId.C3)
    return CoefficientSet22(
        eps1, eps2, eps3, eps4,
        delta1, delta2, delta3, delta4,
        beta1, beta2, beta3, beta4,
        case, left_low, right_low,
    )


def coeffs_thm22(p: ParamSet) -> CoefficientSet22:
    return coeffs22(p.lam, p.mu, p.alpha)


def _endpoint_g(f: TestFunction, p: ParamSet, q: float) -> tuple[float, float]:
    ga = f.abs_fprime_q(p.a, q)
    gb = f.abs_fprime_q(p.b, q)
    if not (math.isfinite(ga) and math.isfinite(gb)):
        raise EvaluationError(f"{f.id}: |f'|^q not finite at an endpoint")
    return ga, gb


def bound_thm22(f: TestFunction, p: ParamSet, *, collapse: bool = True) -> float:
    """Power-mean bound, ``q >= 1``.

    At ``q == 1`` the result is computed by :func:`bound_cor23` so both
    agree exactly; ``collapse=False`` forces the general expression.
    """
    _require(p, THM22)
    require_domain(p, f, THM22)
    if collapse and p.q == 1.0:
        return bound_cor23(f, p)
    c = coeffs_thm22(p)
    q = p.q
    ga, gb = _endpoint_g(f, p, q)
    e_l, d_a, d_b = c.left()
    e_r, b_a, b_b = c.right()
    left = _nonneg(e_l) ** (1.0 - 1.0 / q) * _nonneg(d_a * ga + p.m * d_b * gb) ** (1.0 / q)
    right = _nonneg(e_r) ** (1.0 - 1.0 / q) * _nonneg(b_a * ga + p.m * b_b * gb) ** (1.0 / q)
    return p.span * (left + right)


def bound_cor23(f: TestFunction, p: ParamSet) -> float:
    """The ``q = 1`` bound; ``p.q`` is ignored."""
    p1 = p.replace(q=1.0)
    _require(p1, THM22)
    require_domain(p1, f, THM22)
    c = coeffs_thm22(p1)
    fa, fb = _endpoint_g(f, p1, 1.0)
    _, d_a, d_b = c.left()
    _, b_a, b_b = c.right()
    return p.span * ((d_a + b_a) * fa + p.m * (d_b + b_b) * fb)


def delta3_star(alpha: float) -> float:
    return (2.0 + 3.0 ** (alpha + 1) * (2 * alpha + 1)) / (
        6.0 ** (alpha + 2) * (alpha + 1) * (alpha + 2)
    )


def beta1_star(alpha: float) -> float:
    return (
        2.0 * 5.0 ** (alpha + 2)
        + 6.0 ** (alpha + 1) * (alpha - 4)
        - 3.0 ** (alpha + 1) * (2 * alpha + 7)
    ) / (6.0 ** (alpha + 2) * (alpha + 1) * (alpha + 2))


def _require_weights(p: ParamSet, lam: float, mu: float, name: str) -> None:
    if not (_is(p.lam, lam) and _is(p.mu, mu)):
        raise ValueError(f"{name} needs lambda={lam!r}, mu={mu!r}")


def bound_cor23a(f: TestFunction, p: ParamSet) -> float:
    """Simpson case (``lam = 1/3``, ``mu = 1/2``) of the power-mean bound."""
    _require_weights(p, 1 / 3, 0.5, "bound_cor23a")
    _require(p, THM22)
    require_domain(p, f, THM22)
    q, m = p.q, p.m
    ga, gb = _endpoint_g(f, p, q)
    e = 5.0 / 72.0
    d3, b1 = delta3_star(p.alpha), beta1_star(p.alpha)
    inner = (d3 * ga + m * (e - d3) * gb) ** (1 / q) + (b1 * ga + m * (e - b1) * gb) ** (1 / q)
    return p.span * e ** (1 - 1 / q) * inner


def bound_thm22_trapezoid(f: TestFunction, p: ParamSet) -> float:
    """``lam = 1``, ``mu = 1/2`` case of the power-mean bound."""
    _require_weights(p, 1.0, 0.5, "bound_thm22_trapezoid")
    _require(p, THM22)
    q, m, al = p.q, p.m, p.alpha
    ga, gb = _endpoint_g(f, p, q)
    den = 2.0 ** (al + 2) * (al + 1) * (al + 2)
    c1 = 1.0 / den
    c2 = (al * 2.0 ** (al + 1) + 1.0) / den
    inner = (c1 * ga + m * (0.125 - c1) * gb) ** (1 / q) + (c2 * ga + m * (0.125 - c2) * gb) ** (1 / q)
    return p.span * 0.125 ** (1 - 1 / q) * inner


def bound_thm22_midpoint(f: TestFunction, p: ParamSet) -> float:
    """``lam = 0``, ``mu = 1/2`` case of the power-mean bound."""
    _require_weights(p, 0.0, 0.5, "bound_thm22_midpoint")
    _require(p, THM22)
    q, m, al = p.q, p.m, p.alpha
    ga, gb = _endpoint_g(f, p, q)
    c1 = 1.0 / (2.0 ** (al + 2) * (al + 2))
    c2 = (2.0 ** (al + 2) - al - 3.0) / (2.0 ** (al + 2) * (al + 1) * (al + 2))
    inner = (c1 * ga + m * (0.125 - c1) * gb) ** (1 / q) + (c2 * ga + m * (0.125 - c2) * gb) ** (1 / q)
    return p.span * 0.125 ** (1 - 1 / q) * inner


# --------------------------------------------------------------------------
# Hoelder-type bounds
# --------------------------------------------------------------------------


def thetas(lam: float, mu: float, pexp: float) -> tuple[float, float, float, float]:
    """``(theta1, theta2, theta3, theta4)``; a theta whose base would be
    negative at these weights is returned as ``nan``."""
    cl = lam * (1.0 - mu)
    cr = 1.0 - lam * mu
    e = pexp + 1.0
    nan = math.nan
    t1 = cl**e + (mu - cl) ** e if mu >= cl else nan
    t2 = cl**e - (cl - mu) ** e if mu <= cl else nan
    t3 = (cr - mu) ** e + (lam * mu) ** e if mu <= cr else nan
    t4 = (lam * mu) ** e - (mu - cr) ** e if mu >= cr else nan
    return t1, t2, t3, t4


def active_thetas(lam: float, mu: float, pexp: float) -> tuple[float, float]:
    """The ``(left, right)`` thetas selected by the kernel pivots."""
    t1, t2, t3, t4 = thetas(lam, mu, pexp)
    left = t2 if _left_low(lam, mu) else t1
    right = t3 if _right_low(lam, mu) else t4
    return left, right


def hadamard_upper(
    g: Callable,
    alpha: float,
    m: float,
    lo: float,
    hi: float,
    domain_upper: float | None = None,
) -> float:
    """Upper estimate of the mean of an (alpha, m)-convex ``g`` on ``[lo, hi]``:

    ``min{(g(lo) + alpha*m*g(hi/m)), (g(hi) + alpha*m*g(lo/m))} / (alpha + 1)``
    """
    if not lo <= hi:
        raise ValueError(f"need lo <= hi, got [{lo!r}, {hi!r}]")
    pts = np.array([lo, hi, hi / m, lo / m])
    if domain_upper is not None:
        outside = tuple(float(x) for x in pts if not 0.0 <= x <= domain_upper * (1 + 1e-12))
        if outside:
            raise DomainError(f"points {outside} outside [0, {domain_upper!r}]", outside)
    g_lo, g_hi, g_hi_m, g_lo_m = (float(v) for v in np.asarray(g(pts), dtype=float))
    first = (g_lo + alpha * m * g_hi_m) / (alpha + 1.0)
    second = (g_hi + alpha * m * g_lo_m) / (alpha + 1.0)
    return min(first, second)


@dataclass(frozen=True)
class CoefficientSet24:
    theta1: float
    theta2: float
    theta3: float
    theta4: float
    A: float
    B: float
    p: float


def coeffs_thm24(f: TestFunction, p: ParamSet) -> CoefficientSet24:
    _require(p, THM24)
    require_domain(p, f, THM24)
    g = f.g(p.q)
    node, D = p.node, f.domain_upper
    A = p.mu * hadamard_upper(g, p.alpha, p.m, node, p.mb, D) if p.mu > 0 else 0.0
    B = (1.0 - p.mu) * hadamard_upper(g, p.alpha, p.m, p.a, node, D) if p.mu < 1 else 0.0
    return CoefficientSet24(*thetas(p.lam, p.mu, p.p), A=A, B=B, p=p.p)


def _root_sum(u: float, v: float, e: float, pe: float) -> float:
    """``(u**e + v**e)**(1/pe)`` for ``u, v >= 0`` without underflow at large ``pe``."""
    top = max(u, v)
    if top == 0.0:
        return 0.0
    return top ** (e / pe) * ((u / top) ** e + (v / top) ** e) ** (1 / pe)


def _root_diff(u: float, w: float, e: float, pe: float) -> float:
    """``(u**e - w**e)**(1/pe)`` for ``0 <= w <= u``, scaled the same way."""
    if u == 0.0:
        return 0.0
    return u ** (e / pe) * _nonneg(1.0 - (w / u) ** e) ** (1 / pe)


def theta_roots(lam: float, mu: float, pe: float) -> tuple[float, float]:
    """Active ``(theta_left**(1/p), theta_right**(1/p))``.

    Equal to ``active_thetas(...)**(1/p)`` but computed in scaled form, so
    ``q`` just above 1 (``p`` huge) neither underflows nor overflows.
    """
    cl, cr = pivots(lam, mu)
    e = pe + 1.0
    if _left_low(lam, mu):
        left = _root_diff(cl, _nonneg(cl - mu), e, pe)
    else:
        left = _root_sum(cl, mu - cl, e, pe)
    if _right_low(lam, mu):
        right = _root_sum(_nonneg(cr - mu), lam * mu, e, pe)
    else:
        right = _root_diff(lam * mu, _nonneg(mu - cr), e, pe)
    return left, right


def _hoelder(p: ParamSet, A: float, B: float) -> float:
    pe, q = p.p, p.q
    r_l, r_r = theta_roots(p.lam, p.mu, pe)
    inner = r_l * _nonneg(A) ** (1 / q) + r_r * _nonneg(B) ** (1 / q)
    return p.span * (1.0 / (pe + 1.0)) ** (1 / pe) * inner


def bound_thm24(f: TestFunction, p: ParamSet) -> float:
    """Hoelder bound with Hadamard-type A and B (``q > 1``)."""
    c = coeffs_thm24(f, p)
    return _hoelder(p, c.A, c.B)


@dataclass(frozen=True)
class CoefficientSet26:
    A2: float
    B2: float
    A3: float | None = None
    B3: float | None = None


def coeffs_thm26(f: TestFunction, p: ParamSet) -> CoefficientSet26:
    _require(p, THM26)
    require_domain(p, f, THM26)
    ga, gb = _endpoint_g(f, p, p.q)
    mu, al, m = p.mu, p.alpha, p.m
    A2 = (mu ** (al + 1) * ga + m * (mu * (al + 1) - mu ** (al + 1)) * gb) / (al + 1)
    B2 = (
        (1 - mu ** (al + 1)) * ga + m * ((mu ** (al + 1) - 1) + (1 - mu) * (al + 1)) * gb
    ) / (al + 1)
    A3 = B3 = None
    if _is(mu, 0.5):
        A3 = ga + m * (2.0**al * (al + 1) - 1) * gb
        B3 = (2.0 ** (al + 1) - 1) * ga + m * (2.0**al * (al + 1) + 1 - 2.0 ** (al + 1)) * gb
    return CoefficientSet26(A2, B2, A3, B3)


def bound_thm26(f: TestFunction, p: ParamSet) -> float:
    """Hoelder bound with endpoint-only A2 and B2 (``q > 1``)."""
    c = coeffs_thm26(f, p)
    return _hoelder(p, c.A2, c.B2)


def simpson_constant(pexp: float) -> float:
    """``((2**(p+1) + 1) / (3 (p+1)))**(1/p)``, the Simpson-case theta factor."""
    # 2**(p+1) factored out so large p does not overflow
    e = pexp + 1.0
    return 2.0 ** (e / pexp) * ((1.0 + 2.0**-e) / (3.0 * e)) ** (1 / pexp)


def _a1_b1(f: TestFunction, p: ParamSet) -> tuple[float, float]:
    q, al, m, a, mb, b = p.q, p.alpha, p.m, p.a, p.mb, p.b
    g = f.g(q)
    mid = (a + mb) / 2.0
    gm, gb, gmb, gmid_m, ga_m, ga = (
        float(v) for v in g(np.array([mid, b, mb, (a + mb) / (2 * m), a / m, a]))
    )
    A1 = min((gm + al * m * gb) / (al + 1), (gmb + al * m * gmid_m) / (al + 1))
    B1 = min((gm + al * m * ga_m) / (al + 1), (ga + al * m * gmid_m) / (al + 1))
    return A1, B1


def bound_cor25(f: TestFunction, p: ParamSet) -> float:
    """Simpson case of the Hadamard-type Hoelder bound."""
    _require_weights(p, 1 / 3, 0.5, "bound_cor25")
    _require(p, THM24)
    require_domain(p, f, THM24)
    A1, B1 = _a1_b1(f, p)
    q = p.q
    return (p.span / 12.0) * simpson_constant(p.p) * (A1 ** (1 / q) + B1 ** (1 / q))


def _quarter_t24(f: TestFunction, p: ParamSet) -> float:
    _require(p, THM24)
    require_domain(p, f, THM24)
    A1, B1 = _a1_b1(f, p)
    q, pe = p.q, p.p
    return (p.span / 4.0) * (1 / (pe + 1)) ** (1 / pe) * (A1 ** (1 / q) + B1 ** (1 / q))


def bound_thm24_trapezoid(f: TestFunction, p: ParamSet) -> float:
    _require_weights(p, 1.0, 0.5, "bound_thm24_trapezoid")
    return _quarter_t24(f, p)


def bound_thm24_midpoint(f: TestFunction, p: ParamSet) -> float:
    _require_weights(p, 0.0, 0.5, "bound_thm24_midpoint")
    return _quarter_t24(f, p)


def _a3_b3(f: TestFunction, p: ParamSet) -> tuple[float, float, float]:
    _require(p, THM26)
    require_domain(p, f, THM26)
    ga, gb = _endpoint_g(f, p, p.q)
    al, m = p.alpha, p.m
    A3 = ga + m * (2.0**al * (al + 1) - 1) * gb
    B3 = (2.0 ** (al + 1) - 1) * ga + m * (2.0**al * (al + 1) + 1 - 2.0 ** (al + 1)) * gb
    scale = (1.0 / (2.0**al * (al + 1))) ** (1 / p.q)
    return A3, B3, scale


def bound_thm26_simpson(f: TestFunction, p: ParamSet) -> float:
    """Simpson case of the endpoint-only Hoelder bound."""
    _require_weights(p, 1 / 3, 0.5, "bound_thm26_simpson")
    A3, B3, scale = _a3_b3(f, p)
    q = p.q
    return (p.span / 12.0) * simpson_constant(p.p) * scale * (A3 ** (1 / q) + B3 ** (1 / q))


def _quarter_t26(f: TestFunction, p: ParamSet) -> float:
    A3, B3, scale = _a3_b3(f, p)
    q, pe = p.q, p.p
    return (p.span / 4.0) * (1 / (pe + 1)) ** (1 / pe) * scale * (A3 ** (1 / q) + B3 ** (1 / q))


def bound_thm26_trapezoid(f: TestFunction, p: ParamSet) -> float:
    _require_weights(p, 1.0, 0.5, "bound_thm26_trapezoid")
    return _quarter_t26(f, p)


def bound_thm26_midpoint(f: TestFunction, p: ParamSet) -> float:
    _require_weights(p, 0.0, 0.5, "bound_thm26_midpoint")
    return _quarter_t26(f, p)


def bound_trapezoid_alpha1(f: TestFunction, p: ParamSet, *, relaxed: bool = False) -> float:
    """Trapezoid bound at ``alpha = 1``:

    ``(mb-a) (1/(p+1))**(1/p) (1/4)**(1+1/q) [(g_a + 3m g_b)**(1/q) + (3 g_a + m g_b)**(1/q)]``

    ``relaxed=True`` drops the ``(1/(p+1))**(1/p)`` factor, which lies in
    ``(1/2, 1)``, giving a larger bound that no longer depends on ``p``.
    """
    _require_weights(p, 1.0, 0.5, "bound_trapezoid_alpha1")
    if not _is(p.alpha, 1.0):
        raise ValueError("bound_trapezoid_alpha1 needs alpha=1")
    _require(p, THM26)
    ga, gb = _endpoint_g(f, p, p.q)
    q, pe, m = p.q, p.p, p.m
    factor = 1.0 if relaxed else (1 / (pe + 1)) ** (1 / pe)
    inner = (ga + 3 * m * gb) ** (1 / q) + (3 * ga + m * gb) ** (1 / q)
    return p.span * factor * 0.25 ** (1 + 1 / q) * inner


# --------------------------------------------------------------------------
# classical inequalities
# --------------------------------------------------------------------------


def hh_check(f: TestFunction, lo: float, hi: float, slack: float = 1e-9) -> tuple[bool, bool]:
    """Check ``f((lo+hi)/2) <= mean(f) <= (f(lo) + f(hi))/2`` up to ``slack``."""
    mean = reference_integral(f.f, lo, hi, 1e-12 * (hi - lo))[0] / (hi - lo)
    f_lo, f_mid, f_hi = (float(v) for v in f.f(np.array([lo, 0.5 * (lo + hi), hi])))
    return f_mid <= mean + slack, mean <= 0.5 * (f_lo + f_hi) + slack


def hadamard_check(
    f: TestFunction, alpha: float, m: float, lo: float, hi: float, slack: float = 1e-9
) -> bool:
    """Check ``mean(f) <= hadamard_upper(f, ...)`` on ``[lo, hi]``."""
    mean = reference_integral(f.f, lo, hi, 1e-12 * (hi - lo))[0] / (hi - lo)
    return mean <= hadamard_upper(f.f, alpha, m, lo, hi, f.domain_upper) + slack


def fourth_derivative_sup(f: TestFunction, lo: float, hi: float, h: float = 1e-2) -> tuple[float, bool]:
    """Sampled ``sup |f''''|`` on ``[lo, hi]``; the flag tells whether an
    analytic fourth derivative was used (otherwise 5-point differences)."""
    if f.f4 is not None:
        x = np.linspace(lo, hi, 10_000)
        vals = np.asarray(f.f4(x), dtype=float)
        analytic = True
    else:
        if hi - lo <= 4 * h:
            raise EvaluationError(f"interval too short for step h={h!r}")
        x = np.linspace(lo + 2 * h, hi - 2 * h, 10_000)
        ff = f.f
        vals = (ff(x - 2 * h) - 4 * ff(x - h) + 6 * ff(x) - 4 * ff(x + h) + ff(x + 2 * h)) / h**4
        analytic = False
    if not np.all(np.isfinite(vals)):
        raise EvaluationError(f"{f.id}: fourth derivative estimate is not finite")
    return float(np.max(np.abs(vals))), analytic


def classical_simpson_bound(f: TestFunction, lo: float, hi: float) -> float:
    """``sup|f''''| * (hi - lo)**4 / 2880`` for the Simpson mean error."""
    sup, _ = fourth_derivative_sup(f, lo, hi)
    return sup * (hi - lo) ** 4 / 2880.0


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------


def tightness(err: float, bound: float, slack: float = VIOLATION_SLACK) -> float:
    """``err / bound``; a zero bound with error below ``slack`` gives 0."""
    if bound == 0.0:
        return 0.0 if err <= slack else math.inf
    return err / bound


# bounds whose hypothesis is the path inequality; t24 is gated separately
PATH_GATED = ("t22", "c23", "t26")


@dataclass(frozen=True)
class BoundReport:
    params: ParamSet
    function: str
    true_error: float
    bounds: dict[str, float]
    ratios: dict[str, float]
    certificate: PathCertificate
    case: CaseId
    hadamard_certificate: PathCertificate | None = None
    violations: tuple[str, ...] = ()
    notes: dict[str, str] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "function": self.function,
            "params": self.params.as_dict(),
            "case": self.case.value,
            "certificate": {
                "verdict": self.certificate.verdict,
                "max_violation": self.certificate.max_violation,
                "n_t": self.certificate.n_t,
                "tolerance": self.certificate.tolerance,
            },
            "hadamard_certificate": None
            if self.hadamard_certificate is None
            else {
                "verdict": self.hadamard_certificate.verdict,
                "max_violation": self.hadamard_certificate.max_violation,
            },
            "true_error": self.true_error,
            "bounds": dict(self.bounds),
            "ratios": dict(self.ratios),
            "violations": list(self.violations),
            "notes": dict(self.notes),
        }


_SPECIAL: list[tuple[str, float, float, Callable, str]] = [
    ("c23a", 1 / 3, 0.5, bound_cor23a, THM22),
    ("t22_trapezoid", 1.0, 0.5, bound_thm22_trapezoid, THM22),
    ("t22_midpoint", 0.0, 0.5, bound_thm22_midpoint, THM22),
    ("c25", 1 / 3, 0.5, bound_cor25, THM24),
    ("t24_trapezoid", 1.0, 0.5, bound_thm24_trapezoid, THM24),
    ("t24_midpoint", 0.0, 0.5, bound_thm24_midpoint, THM24),
    ("t26_simpson", 1 / 3, 0.5, bound_thm26_simpson, THM26),
    ("t26_trapezoid", 1.0, 0.5, bound_thm26_trapezoid, THM26),
    ("t26_midpoint", 0.0, 0.5, bound_thm26_midpoint, THM26),
]


def bound_report(
    f: TestFunction,
    p: ParamSet,
    tol: float | None = None,
    certificate: PathCertificate | None = None,
    specializations: bool = True,
) -> BoundReport:
    """Evaluate every bound that applies at ``p`` and compare with the true error.

    Bounds whose hypotheses are not met (``q = 1`` for the Hoelder bounds,
    m-divided points outside the domain, ...) are left out and the reason
    is recorded in ``notes``.

    Domination is checked only where the hypothesis a proof actually uses
    is certified: the path inequality for t22/c23/t26, and the inequality
    along the four segments behind A and B for t24.
    """
    _require(p, THM22)
    qr = true_error(f, p, tol)
    cert = certificate or check_path_hypothesis(f, p)
    hcert = None
    bounds: dict[str, float] = {}
    notes: dict[str, str] = {}

    bounds["t22"] = bound_thm22(f, p)
    if p.q == 1.0:
        bounds["c23"] = bound_cor23(f, p)
        notes["t24"] = notes["t26"] = "requires q > 1"
    else:
        try:
            bounds["t24"] = bound_thm24(f, p)
            hcert = check_hadamard_hypothesis(f, p)
        except DomainError as exc:
            notes["t24"] = str(exc)
        bounds["t26"] = bound_thm26(f, p)

    if _is(p.lam, 1 / 3) and _is(p.mu, 0.5) and f.f4_available:
        bounds["simpson_classical"] = classical_simpson_bound(f, p.a, p.mb)

    if specializations:
        for name, lam, mu, fn, thm in _SPECIAL:
            if _is(p.lam, lam) and _is(p.mu, mu) and validate_params(p, thm):
                try:
                    bounds[name] = fn(f, p)
                except DomainError as exc:
                    notes[name] = str(exc)
        if _is(p.lam, 1.0) and _is(p.mu, 0.5) and _is(p.alpha, 1.0) and p.q > 1:
            bounds["t26_trapezoid_alpha1"] = bound_trapezoid_alpha1(f, p)
            bounds["t26_trapezoid_alpha1_relaxed"] = bound_trapezoid_alpha1(f, p, relaxed=True)

    err = qr.true_error
    ratios = {k: tightness(err, v) for k, v in bounds.items()}
    gated = list(PATH_GATED) if cert.passed else []
    if hcert is not None and hcert.passed:
        gated.append("t24")
    violations = tuple(
        k for k in bounds if k in gated and err > bounds[k] + VIOLATION_SLACK
    )
    return BoundReport(
        params=p,
        function=f.id,
        true_error=err,
        bounds=bounds,
        ratios=ratios,
        certificate=cert,
        case=select_case(p),
        hadamard_certificate=hcert,
        violations=violations,
        notes=notes,
    )


__all__ = [
    "VIOLATION_SLACK",
    "CaseId",
    "pivots",
    "select_case",
    "CoefficientSet22",
    "coeffs22",
    "coeffs_thm22",
    "bound_thm22",
    "bound_cor23",
    "delta3_star",
    "beta1_star",
    "bound_cor23a",
    "bound_thm22_trapezoid",
    "bound_thm22_midpoint",
    "thetas",
    "active_thetas",
    "theta_roots",
    "hadamard_upper",
    "CoefficientSet24",
    "coeffs_thm24",
    "bound_thm24",
    "CoefficientSet26",
    "coeffs_thm26",
    "bound_thm26",
    "simpson_constant",
    "bound_cor25",
    "bound_thm24_trapezoid",
    "bound_thm24_midpoint",
    "bound_thm26_simpson",
    "bound_thm26_trapezoid",
    "bound_thm26_midpoint",
    "bound_trapezoid_alpha1",
    "hh_check",
    "hadamard_check",
    "fourth_derivative_sup",
    "classical_simpson_bound",
    "tightness",
    "BoundReport",
    "bound_report",
]
