"""Sampled certificates for the (alpha, m)-convexity hypothesis.

``g`` is (alpha, m)-convex on ``[0, D]`` when

    g(t*x + m*(1-t)*y) <= t**alpha * g(x) + m*(1 - t**alpha) * g(y)

for all ``x, y`` in ``[0, D]`` and ``t`` in ``[0, 1]``.  Certificates scan
uniform grids and report the largest excess of the left side over the
right.  Grid sizes count subintervals, so a size ``n`` grid has ``n + 1``
points and doubling ``n`` yields a superset of the previous points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import EvaluationError
from .funcmodel import ParamSet, TestFunction

DEFAULT_GRID = (64, 64, 64)
DEFAULT_PATH_GRID = 4096
DEFAULT_CERT_TOL = 1e-12


@dataclass(frozen=True)
class ConvexityCertificate:
    max_violation: float
    grid_sizes: tuple[int, int, int]
    tolerance: float
    passed: bool
    worst_witness: tuple[float, float, float] | None

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass(frozen=True)
class PathCertificate:
    """The operative inequality along ``t -> t*a + m*(1-t)*b`` only."""

    max_violation: float
    n_t: int
    tolerance: float
    passed: bool
    worst_t: float | None = None

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


def _values(g: Callable, x: np.ndarray, what: str) -> np.ndarray:
    try:
        y = np.asarray(g(x), dtype=float)
    except TypeError:
        y = None
    if y is None or y.shape != x.shape:
        y = np.vectorize(lambda v: float(g(v)), otypes=[float])(x)
    bad = ~np.isfinite(y)
    if bad.any():
        point = float(x[bad].flat[0])
        raise EvaluationError(f"{what} is not finite at x={point!r}", point)
    return y


def check_am_convex(
    g: Callable,
    alpha: float,
    m: float,
    domain_upper: float,
    grid: tuple[int, int, int] = DEFAULT_GRID,
    tol: float = DEFAULT_CERT_TOL,
) -> ConvexityCertificate:
    """Scan ``[0, D]^2 x [0, 1]`` for violations of (alpha, m)-convexity."""
    n_x, n_y, n_t = grid
    xs = np.linspace(0.0, domain_upper, n_x + 1)
    ys = np.linspace(0.0, domain_upper, n_y + 1)
    ts = np.linspace(0.0, 1.0, n_t + 1)
    gx = _values(g, xs, "g")
    gy = _values(g, ys, "g")
    ta = ts**alpha

    worst = -np.inf
    witness = None
    # loop over t keeps memory at O(n_x * n_y)
    for k, (t, w) in enumerate(zip(ts, ta)):
        z = t * xs[:, None] + m * (1.0 - t) * ys[None, :]
        lhs = _values(g, z, "g")
        excess = lhs - (w * gx[:, None] + m * (1.0 - w) * gy[None, :])
        i, j = np.unravel_index(np.argmax(excess), excess.shape)
        if excess[i, j] > worst:
            worst = float(excess[i, j])
            witness = (float(xs[i]), float(ys[j]), float(ts[k]))
    max_violation = max(worst, 0.0)
    return ConvexityCertificate(
        max_violation=max_violation,
        grid_sizes=(n_x, n_y, n_t),
        tolerance=tol,
        passed=max_violation <= tol,
        worst_witness=witness,
    )


def check_convex(g: Callable, lo: float, hi: float, n: int = 64, n_t: int = 64) -> float:
    """Plain convexity scan: largest ``g(t*x + (1-t)*y) - t*g(x) - (1-t)*g(y)``."""
    xs = np.linspace(lo, hi, n + 1)
    ts = np.linspace(0.0, 1.0, n_t + 1)
    gx = _values(g, xs, "g")
    worst = 0.0
    for t in ts:
        z = t * xs[:, None] + (1.0 - t) * xs[None, :]
        excess = _values(g, z, "g") - (t * gx[:, None] + (1.0 - t) * gx[None, :])
        worst = max(worst, float(excess.max()))
    return worst


def path_violation(
    g: Callable, a: float, b: float, alpha: float, m: float, n_t: int = DEFAULT_PATH_GRID
) -> tuple[float, float]:
    """Largest excess along the path from ``m*b`` (t=0) to ``a`` (t=1), and its ``t``."""
    ts = np.linspace(0.0, 1.0, n_t + 1)
    lhs = _values(g, ts * a + m * (1.0 - ts) * b, "g")
    ga, gb = _values(g, np.array([a, b]), "g")
    w = ts**alpha
    excess = lhs - (w * ga + m * (1.0 - w) * gb)
    k = int(np.argmax(excess))
    return max(float(excess[k]), 0.0), float(ts[k])


def check_path_hypothesis(
    f: TestFunction,
    p: ParamSet,
    n_t: int = DEFAULT_PATH_GRID,
    tol: float = DEFAULT_CERT_TOL,
) -> PathCertificate:
    """Certify ``|f'|^q`` along the segment the bound proofs integrate over."""
    viol, t = path_violation(f.g(p.q), p.a, p.b, p.alpha, p.m, n_t)
    return PathCertificate(viol, n_t, tol, viol <= tol, t)


def hadamard_pairs(p: ParamSet) -> list[tuple[float, float]]:
    """``(x, y)`` pairs whose definitional inequality the Hadamard-type
    estimates of A and B rely on.

    On ``[node, mb]`` the two estimates use ``(node, b)`` and
    ``(mb, node/m)``; on ``[a, node]`` they use ``(a, node/m)`` and
    ``(node, a/m)``.  Empty sub-segments (``mu`` at 0 or 1) drop out.
    """
    node, m = p.node, p.m
    pairs = []
    if p.mu > 0:
        pairs += [(node, p.b), (p.mb, node / m)]
    if p.mu < 1:
        pairs += [(p.a, node / m), (node, p.a / m)]
    return pairs


def check_hadamard_hypothesis(
    f: TestFunction,
    p: ParamSet,
    n_t: int = DEFAULT_PATH_GRID,
    tol: float = DEFAULT_CERT_TOL,
) -> PathCertificate:
    """Certify ``|f'|^q`` along the four segments behind the Hadamard-type A, B."""
    g = f.g(p.q)
    worst, worst_t = 0.0, None
    for x, y in hadamard_pairs(p):
        # path_violation scans t*a + m*(1-t)*b, i.e. x=a, y=b
        viol, t = path_violation(g, x, y, p.alpha, p.m, n_t)
        if worst_t is None or viol > worst:
            worst, worst_t = viol, t
    return PathCertificate(worst, n_t, tol, worst <= tol, worst_t)


def classify_class(alpha: float, m: float) -> str:
    """Name the classical function class for special ``(alpha, m)`` pairs."""
    if not (0.0 <= alpha <= 1.0 and 0.0 <= m <= 1.0):
        raise ValueError("(alpha, m) must lie in [0, 1]^2")
    if alpha == 0 and m == 0:
        return "increasing"
    if m == 0:
        return "starshaped" if alpha == 1 else "alpha-starshaped"
    if alpha == 1:
        return "convex" if m == 1 else "m-convex"
    if m == 1:
        return "alpha-convex"
    return "general (alpha,m)"


__all__ = [
    "ConvexityCertificate",
    "PathCertificate",
    "check_am_convex",
    "check_convex",
    "path_violation",
    "check_path_hypothesis",
    "hadamard_pairs",
    "check_hadamard_hypothesis",
    "classify_class",
]
