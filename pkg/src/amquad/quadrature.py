"""The three-point quadrature functional and a reference integrator.

The reference integrator is a globally adaptive Gauss-Kronrod scheme: each
panel is evaluated with the nested 7-point Gauss / 15-point Kronrod pair,
``|K15 - G7|`` serves as the panel error, and the panel with the largest
error is bisected until the summed error meets the tolerance.
"""

from __future__ import annotations

import heapq
import math
import os
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .errors import ConvergenceError, EvaluationError
from .funcmodel import THM22, ParamSet, TestFunction, require_domain

DEFAULT_TOL = 1e-10
DEFAULT_MAX_DEPTH = 50
MAX_PANELS = 20_000

# Kronrod abscissae on [0, 1] (positive half, descending); the odd-indexed
# ones are the 7-point Gauss nodes.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full 15-node rule on [-1, 1].
NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[[9, 11, 13]] = _WG[2::-1]


def default_tol() -> float:
    """Integrator tolerance, overridable through the ``AMQ_TOL`` variable."""
    env = os.environ.get("AMQ_TOL")
    if env:
        tol = float(env)
        if not tol > 0:
            raise ValueError("AMQ_TOL must be positive")
        return tol
    return DEFAULT_TOL


def _evaluate(f: Callable, x: np.ndarray) -> np.ndarray:
    try:
        y = np.asarray(f(x), dtype=float)
    except TypeError:
        y = None
    if y is None or y.shape != x.shape:
        y = np.array([float(f(float(xi))) for xi in x])
    if not np.all(np.isfinite(y)):
        bad = float(x[~np.isfinite(y)][0])
        raise EvaluationError(f"integrand is not finite at x={bad!r}", bad)
    return y


def gk15(f: Callable, lo: float, hi: float) -> tuple[float, float]:
    """One Gauss-Kronrod panel: ``(K15 estimate, |K15 - G7|)``."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    y = _evaluate(f, mid + half * NODES)
    k = half * float(KRONROD_WEIGHTS @ y)
    g = half * float(GAUSS_WEIGHTS @ y)
    return k, abs(k - g)


def reference_integral(
    f: Callable,
    lo: float,
    hi: float,
    tol: float | None = None,
    *,
    rtol: float = 0.0,
    max_depth: int = DEFAULT_MAX_DEPTH,
    breakpoints: Iterable[float] = (),
) -> tuple[float, float]:
    """Integrate ``f`` over ``[lo, hi]`` to absolute tolerance ``tol``.

    The run stops once the summed panel error is at most
    ``max(tol, rtol * |integral|)``.  Interior ``breakpoints`` (kinks of the
    integrand) seed the initial panels so no panel straddles them.

    Raises :class:`ConvergenceError` if a panel would need to be split
    beyond ``max_depth`` bisections.
    """
    if tol is None:
        tol = default_tol()
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo!r}, {hi!r}]")
    cuts = sorted({lo, hi, *(x for x in breakpoints if lo < x < hi)})

    heap: list[tuple[float, int, float, float, float]] = []
    total = 0.0
    err = 0.0
    for left, right in zip(cuts[:-1], cuts[1:]):
        val, e = gk15(f, left, right)
        heapq.heappush(heap, (-e, 0, left, right, val))
        total += val
        err += e

    while True:
        if err <= max(tol, rtol * abs(total)):
            # running sums drift; confirm with exact summation before stopping
            total = math.fsum(item[4] for item in heap)
            err = math.fsum(-item[0] for item in heap)
            if err <= max(tol, rtol * abs(total)):
                return total, err
        neg_e, depth, left, right, val = heapq.heappop(heap)
        if depth >= max_depth or len(heap) >= MAX_PANELS:
            heapq.heappush(heap, (neg_e, depth, left, right, val))
            total = math.fsum(item[4] for item in heap)
            err = math.fsum(-item[0] for item in heap)
            raise ConvergenceError(
                f"tolerance {tol:g} not reached on [{lo!r}, {hi!r}] "
                f"(error estimate {err:.3g})",
                total,
                err,
            )
        mid = 0.5 * (left + right)
        v1, e1 = gk15(f, left, mid)
        v2, e2 = gk15(f, mid, right)
        heapq.heappush(heap, (-e1, depth + 1, left, mid, v1))
        heapq.heappush(heap, (-e2, depth + 1, mid, right, v2))
        total += v1 + v2 - val
        err += e1 + e2 + neg_e


@dataclass(frozen=True)
class QuadResult:
    """Quadrature value, reference mean and their gap.

    ``integral`` is the mean ``(1/(mb-a)) * int_a^{mb} f`` and
    ``integral_error_estimate`` bounds its error.
    """

    q_value: float
    integral: float
    integral_error_estimate: float
    true_error: float


def _scalar(fn: Callable, x: float) -> float:
    y = float(np.asarray(fn(np.float64(x)), dtype=float))
    if not math.isfinite(y):
        raise EvaluationError(f"function is not finite at x={x!r}", x)
    return y


def quad_functional(f: TestFunction, p: ParamSet) -> float:
    """``lam*(mu*f(a) + (1-mu)*f(mb)) + (1-lam)*f(mu*a + m*(1-mu)*b)``."""
    require_domain(p, f, THM22)
    fa = _scalar(f.f, p.a)
    fmb = _scalar(f.f, p.mb)
    fnode = _scalar(f.f, p.node)
    return p.lam * (p.mu * fa + (1.0 - p.mu) * fmb) + (1.0 - p.lam) * fnode


def reference_mean(f: TestFunction, p: ParamSet, tol: float | None = None) -> tuple[float, float]:
    """Mean of ``f`` over ``[a, mb]`` and its error estimate, both to ``tol``."""
    if tol is None:
        tol = default_tol()
    require_domain(p, f, THM22)
    raw, err = reference_integral(f.f, p.a, p.mb, tol * p.span)
    return raw / p.span, err / p.span


def true_error(f: TestFunction, p: ParamSet, tol: float | None = None) -> QuadResult:
    qv = quad_functional(f, p)
    mean, err = reference_mean(f, p, tol)
    return QuadResult(qv, mean, err, abs(qv - mean))


__all__ = [
    "DEFAULT_TOL",
    "QuadResult",
    "default_tol",
    "gk15",
    "reference_integral",
    "quad_functional",
    "reference_mean",
    "true_error",
]
