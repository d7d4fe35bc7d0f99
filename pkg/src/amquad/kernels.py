"""The piecewise-linear kernel behind the error identity, plus numeric oracles.

With ``x(t) = t*a + m*(1-t)*b`` the quadrature error satisfies

    Q - mean(f) = (mb - a) * [ int_0^mu  (lam*(1-mu) - t) f'(x(t)) dt
                             + int_mu^1 ((1 - lam*mu) - t) f'(x(t)) dt ]

The oracles integrate ``|kernel|``, ``|kernel| * weight`` and
``|kernel|**p`` numerically so the closed-form coefficients in
:mod:`amquad.bounds` can be checked against an independent route.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .funcmodel import ParamSet, TestFunction, require_domain
from .quadrature import default_tol, reference_integral, reference_mean, quad_functional

Segment = Literal["left", "right"]
Variant = Literal["lambda_mu", "alpha_lambda"]

ORACLE_TOL = 1e-13


@dataclass(frozen=True)
class KernelSpec:
    """Left kernel ``c_L - t`` on ``[0, mu]``, right kernel ``c_R - t`` on ``[mu, 1]``.

    ``variant="alpha_lambda"`` swaps the right pivot for ``1 - alpha*lam``;
    it exists only to show that this variant breaks the identity.
    """

    params: ParamSet
    variant: Variant = "lambda_mu"

    @property
    def left_pivot(self) -> float:
        return self.params.lam * (1.0 - self.params.mu)

    @property
    def right_pivot(self) -> float:
        p = self.params
        if self.variant == "alpha_lambda":
            return 1.0 - p.alpha * p.lam
        return 1.0 - p.lam * p.mu

    def left(self, t):
        return self.left_pivot - t

    def right(self, t):
        return self.right_pivot - t

    def bounds(self, segment: Segment) -> tuple[float, float, float]:
        """``(lo, hi, pivot)`` for one segment."""
        mu = self.params.mu
        if segment == "left":
            return 0.0, mu, self.left_pivot
        if segment == "right":
            return mu, 1.0, self.right_pivot
        raise ValueError(f"segment must be 'left' or 'right', not {segment!r}")


@dataclass(frozen=True)
class IdentityResidual:
    lhs: float
    rhs: float
    residual: float
    integrator_tol: float


def identity_residual(
    f: TestFunction,
    p: ParamSet,
    tol: float | None = None,
    variant: Variant = "lambda_mu",
) -> IdentityResidual:
    """Evaluate both sides of the error identity independently."""
    if tol is None:
        tol = default_tol()
    require_domain(p, f, "t22")
    lhs = quad_functional(f, p) - reference_mean(f, p, tol)[0]
    k = KernelSpec(p, variant)
    a, mb, fprime = p.a, p.mb, f.fprime

    def left(t):
        return k.left(t) * fprime(t * a + (1.0 - t) * mb)

    def right(t):
        return k.right(t) * fprime(t * a + (1.0 - t) * mb)

    # the integrals are scaled by (mb - a) afterwards
    sub_tol = tol / (2.0 * p.span)
    total = 0.0
    if p.mu > 0:
        total += reference_integral(left, 0.0, p.mu, sub_tol)[0]
    if p.mu < 1:
        total += reference_integral(right, p.mu, 1.0, sub_tol)[0]
    rhs = p.span * total
    return IdentityResidual(lhs, rhs, abs(lhs - rhs), tol)


def _segment_integral(integrand, lo, hi, pivot, tol, rtol=0.0) -> float:
    if not lo < hi:
        return 0.0
    return reference_integral(integrand, lo, hi, tol, rtol=rtol, breakpoints=(pivot,))[0]


def oracle_plain(segment: Segment, p: ParamSet, tol: float = ORACLE_TOL) -> float:
    """``int |kernel| dt`` over one segment (validates eps1..eps4)."""
    lo, hi, c = KernelSpec(p).bounds(segment)
    return _segment_integral(lambda t: np.abs(c - t), lo, hi, c, tol)


def oracle_weighted(
    segment: Segment,
    weight: Literal["t^alpha", "1-t^alpha"],
    p: ParamSet,
    tol: float = ORACLE_TOL,
) -> float:
    """``int |kernel| * w(t) dt`` with ``w = t**alpha`` or ``1 - t**alpha``.

    Left segment gives delta1/delta3 (``t^alpha``) and delta2/delta4; the
    right segment gives the beta pairs in the same pattern.
    """
    lo, hi, c = KernelSpec(p).bounds(segment)
    alpha = p.alpha
    if weight == "t^alpha":
        def integrand(t):
            return np.abs(c - t) * t**alpha
    elif weight == "1-t^alpha":
        def integrand(t):
            return np.abs(c - t) * (1.0 - t**alpha)
    else:
        raise ValueError(f"unknown weight {weight!r}")
    return _segment_integral(integrand, lo, hi, c, tol)


def oracle_power(segment: Segment, p: ParamSet, pexp: float, tol: float = 1e-15) -> float:
    """``int |kernel|**pexp dt``; ``(pexp + 1)`` times this is the matching theta."""
    if not pexp > 1:
        raise ValueError("pexp must exceed 1")
    lo, hi, c = KernelSpec(p).bounds(segment)
    return _segment_integral(lambda t: np.abs(c - t) ** pexp, lo, hi, c, tol, rtol=1e-12)


__all__ = [
    "KernelSpec",
    "IdentityResidual",
    "identity_residual",
    "oracle_plain",
    "oracle_weighted",
    "oracle_power",
]
