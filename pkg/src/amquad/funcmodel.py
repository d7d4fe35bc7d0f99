"""Parameter tuples, the test-function catalog and domain validation.

A :class:`ParamSet` fixes the interval generator ``(a, b)``, the quadrature
weights ``(lam, mu)``, the convexity exponents ``(alpha, m)`` and the
power-mean / Hoelder exponent ``q``.  Every bound in :mod:`amquad.bounds`
is a function of one ``ParamSet`` and one :class:`TestFunction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError

RealFn = Callable[[np.ndarray], np.ndarray]

# Bound family ids: power-mean, Hoelder with Hadamard-type A/B, Hoelder with endpoint A/B.
THM22 = "t22"
THM24 = "t24"
THM26 = "t26"
THEOREMS = (THM22, THM24, THM26)

# Families whose hypotheses demand q > 1 rather than q >= 1.
_STRICT_Q = frozenset({THM24, THM26})


@dataclass(frozen=True)
class ParamSet:
    """The tuple ``(a, b, lambda, mu, alpha, m, q)``.

    ``lam`` is the endpoint weight, ``mu`` the node weight.  The quadrature
    runs over ``[a, m*b]`` with interior node ``mu*a + m*(1 - mu)*b``.
    """

    a: float
    b: float
    lam: float
    mu: float
    alpha: float
    m: float
    q: float = 1.0

    @property
    def mb(self) -> float:
        return self.m * self.b

    @property
    def span(self) -> float:
        """Length ``m*b - a`` of the integration interval."""
        return self.m * self.b - self.a

    @property
    def node(self) -> float:
        """Interior node ``mu*a + m*(1 - mu)*b``."""
        return self.mu * self.a + self.m * (1.0 - self.mu) * self.b

    @property
    def p(self) -> float:
        """Hoelder conjugate of ``q`` (``inf`` when ``q == 1``)."""
        if self.q == 1.0:
            return math.inf
        return self.q / (self.q - 1.0)

    def replace(self, **changes: float) -> "ParamSet":
        values = {name: getattr(self, name) for name in self.__dataclass_fields__}
        values.update(changes)
        return ParamSet(**values)

    def as_dict(self) -> dict[str, float]:
        return {
            "a": self.a,
            "b": self.b,
            "lambda": self.lam,
            "mu": self.mu,
            "alpha": self.alpha,
            "m": self.m,
            "q": self.q,
        }


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class TestFunction:
    """A scalar function with its analytic derivative on ``[0, domain_upper]``.

    ``f``, ``fprime`` and ``f4`` must accept numpy arrays.  ``f4`` (the
    fourth derivative) is optional; it only feeds the classical Simpson
    baseline.
    """

    __test__ = False  # not a pytest class

    id: str
    domain_upper: float
    f: RealFn
    fprime: RealFn
    f4: RealFn | None = None
    notes: str = ""

    @property
    def f4_available(self) -> bool:
        return self.f4 is not None

    def g(self, q: float) -> RealFn:
        """Return ``x -> |f'(x)|**q``, the function whose convexity is assumed."""
        fprime = self.fprime

        def g(x):
            return np.abs(fprime(x)) ** q

        return g

    def abs_fprime_q(self, x: float, q: float) -> float:
        return float(abs(float(self.fprime(np.float64(x)))) ** q)


def validate_params(p: ParamSet, theorem: str = THM22) -> ValidationResult:
    """Check the hypotheses shared by all three bound families.

    ``theorem`` selects the strictness of the ``q`` constraint: the
    power-mean family (``"t22"``) accepts ``q >= 1``, the Hoelder-based
    ones need ``q > 1``.
    """
    bad: list[str] = []
    values = (p.a, p.b, p.lam, p.mu, p.alpha, p.m, p.q)
    if not all(math.isfinite(v) for v in values):
        return ValidationResult(False, ("all parameters must be finite",))
    if p.a < 0:
        bad.append("a>=0 fails")
    if not p.a < p.b:
        bad.append("a<b fails")
    if not 0.0 <= p.lam <= 1.0:
        bad.append("lambda in [0,1] fails")
    if not 0.0 <= p.mu <= 1.0:
        bad.append("mu in [0,1] fails")
    if not 0.0 < p.alpha <= 1.0:
        bad.append("alpha in (0,1] fails")
    if not 0.0 < p.m <= 1.0:
        bad.append("m in (0,1] fails")
    elif not p.m * p.b > p.a:
        bad.append("mb>a fails")
    if theorem in _STRICT_Q:
        if not p.q > 1.0:
            bad.append("q>1 fails")
    elif not p.q >= 1.0:
        bad.append("q>=1 fails")
    return ValidationResult(not bad, tuple(bad))


def eval_points(p: ParamSet, theorem: str = THM22) -> dict[str, float]:
    """Points at which the chosen theorem evaluates ``f`` or ``f'``."""
    pts = {"a": p.a, "b": p.b, "mb": p.mb, "node": p.node}
    if theorem == THM24:
        pts["a/m"] = p.a / p.m
        pts["node/m"] = p.node / p.m
    return pts


def validate_domain(p: ParamSet, f: TestFunction, theorem: str = THM22) -> ValidationResult:
    bad = [
        f"{name}={x!r} outside [0, {f.domain_upper!r}]"
        for name, x in eval_points(p, theorem).items()
        if not 0.0 <= x <= f.domain_upper
    ]
    return ValidationResult(not bad, tuple(bad))


def require_domain(p: ParamSet, f: TestFunction, theorem: str = THM22) -> None:
    res = validate_domain(p, f, theorem)
    if not res:
        raise DomainError(f"{f.id}: " + "; ".join(res.violations))


def derivative_error(f: TestFunction, n: int = 1000, h: float = 1e-5) -> float:
    """Largest scaled gap between ``fprime`` and a central difference of ``f``.

    Returns ``max |f'(x) - (f(x+h) - f(x-h)) / 2h| / (1 + |f'(x)|)`` over ``n``
    equispaced points in ``[h, D - h]``.
    """
    x = np.linspace(h, f.domain_upper - h, n)
    fd = (f.f(x + h) - f.f(x - h)) / (2.0 * h)
    exact = f.fprime(x)
    return float(np.max(np.abs(exact - fd) / (1.0 + np.abs(exact))))


# --------------------------------------------------------------------------
# catalog
# --------------------------------------------------------------------------

DEFAULT_DOMAIN = 4.0


def power(s: float, domain_upper: float = DEFAULT_DOMAIN) -> TestFunction:
    """``x -> x**s`` for ``s >= 1``."""
    if s < 1:
        raise ValueError("power family needs s >= 1")
    s = float(s)
    f4 = None
    if s.is_integer() or s >= 4:
        c4 = s * (s - 1) * (s - 2) * (s - 3)
        if s == 4:
            f4 = lambda x: np.full_like(np.asarray(x, dtype=float), c4)  # noqa: E731
        elif s < 4:
            f4 = lambda x: np.zeros_like(np.asarray(x, dtype=float))  # noqa: E731
        else:
            f4 = lambda x: c4 * np.asarray(x, dtype=float) ** (s - 4)  # noqa: E731
    name = f"pow{int(s)}" if s.is_integer() else f"pow:{s!r}"
    return TestFunction(
        id=name,
        domain_upper=domain_upper,
        f=lambda x: np.asarray(x, dtype=float) ** s,
        fprime=lambda x: s * np.asarray(x, dtype=float) ** (s - 1),
        f4=f4,
        notes="|f'|^q = c x^k with k=(s-1)q; on [0,b] paths from a=0 the "
        "(alpha,m) inequality holds for alpha=1, and for m<1 when k>1",
    )


def exponential(domain_upper: float = DEFAULT_DOMAIN) -> TestFunction:
    return TestFunction(
        id="exp",
        domain_upper=domain_upper,
        f=np.exp,
        fprime=np.exp,
        f4=np.exp,
        notes="|f'|^q convex; (alpha,m)-convexity typically needs alpha=m=1",
    )


def x_exp(domain_upper: float = DEFAULT_DOMAIN) -> TestFunction:
    def f(x):
        x = np.asarray(x, dtype=float)
        return x * np.exp(x)

    def fprime(x):
        x = np.asarray(x, dtype=float)
        return (1.0 + x) * np.exp(x)

    def f4(x):
        x = np.asarray(x, dtype=float)
        return (4.0 + x) * np.exp(x)

    return TestFunction(
        id="xexp",
        domain_upper=domain_upper,
        f=f,
        fprime=fprime,
        f4=f4,
        notes="|f'|^q convex increasing; some m<1 rows pass for larger q",
    )


def reciprocal(domain_upper: float = DEFAULT_DOMAIN) -> TestFunction:
    def f(x):
        return 1.0 / (1.0 + np.asarray(x, dtype=float))

    def fprime(x):
        return -1.0 / (1.0 + np.asarray(x, dtype=float)) ** 2

    def f4(x):
        return 24.0 / (1.0 + np.asarray(x, dtype=float)) ** 5

    return TestFunction(
        id="recip",
        domain_upper=domain_upper,
        f=f,
        fprime=fprime,
        f4=f4,
        notes="|f'|^q convex decreasing; (alpha,m) fails for m<1 along paths from a",
    )


def sine(scale: float = 1.0) -> TestFunction:
    """``x -> scale*sin(x)`` on ``[0, pi]``; ``|f'|`` is not convex there."""

    def f(x):
        return scale * np.sin(x)

    def fprime(x):
        return scale * np.cos(x)

    def f4(x):
        return scale * np.sin(x)

    return TestFunction(
        id="sin",
        domain_upper=math.pi,
        f=f,
        fprime=fprime,
        f4=f4,
        notes="|f'| = |cos| is not convex on [0, pi]; expected to fail certificates",
    )


CATALOG_IDS = ("pow2", "pow3", "pow4", "pow5", "exp", "xexp", "recip", "sin")


def catalog(domain_upper: float = DEFAULT_DOMAIN) -> list[TestFunction]:
    """Built-in test functions.

    The power family is instantiated at ``s = 2, 3, 4, 5``; other exponents are
    available through :func:`get_function` with ids like ``"pow:2.5"``.
    ``domain_upper`` applies to every entry except the sine, which lives on
    ``[0, pi]``.
    """
    return [
        power(2, domain_upper),
        power(3, domain_upper),
        power(4, domain_upper),
        power(5, domain_upper),
        exponential(domain_upper),
        x_exp(domain_upper),
        reciprocal(domain_upper),
        sine(),
    ]


def get_function(fid: str, domain_upper: float = DEFAULT_DOMAIN) -> TestFunction:
    """Look up a catalog entry by id; ``pow:<s>`` builds any power ``s >= 1``."""
    if fid.startswith("pow:"):
        return power(parse_real(fid[4:]), domain_upper)
    for fn in catalog(domain_upper):
        if fn.id == fid:
            return fn
    raise KeyError(f"unknown function id {fid!r}; known: {', '.join(CATALOG_IDS)}, pow:<s>")


def parse_real(text: str | float | int) -> float:
    """Parse ``"1/3"``, ``"0.25"`` or a number; fractions are exact before rounding."""
    if isinstance(text, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(text, (int, float)):
        return float(text)
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse {text!r} as a real number") from exc


def random_params(
    rng: np.random.Generator,
    *,
    a_max: float = 0.5,
    b_max: float = 2.0,
    q_range: tuple[float, float] = (1.0, 4.0),
    min_span: float = 0.05,
    theorem: str = THM22,
    domain_upper: float | None = None,
) -> ParamSet:
    """Draw a valid ``ParamSet`` by rejection sampling.

    When ``domain_upper`` is given, every point the theorem evaluates must
    also lie in ``[0, domain_upper]``.
    """
    probe = TestFunction("probe", domain_upper or math.inf, np.abs, np.abs)
    while True:
        a = rng.uniform(0.0, a_max)
        b = rng.uniform(a, b_max)
        p = ParamSet(
            a=a,
            b=b,
            lam=rng.uniform(0.0, 1.0),
            mu=rng.uniform(0.0, 1.0),
            alpha=1.0 - rng.uniform(0.0, 1.0),
            m=1.0 - rng.uniform(0.0, 1.0),
            q=rng.uniform(*q_range),
        )
        if theorem in _STRICT_Q and p.q == 1.0:
            continue
        if validate_params(p, theorem) and p.span >= min_span and validate_domain(p, probe, theorem):
            return p


def params_grid(
    lam: Sequence[float],
    mu: Sequence[float],
    alpha: Sequence[float],
    m: Sequence[float],
    q: Sequence[float],
    a: float = 0.0,
    b: float = 1.0,
) -> list[ParamSet]:
    """Cartesian product in ``(lam, mu, alpha, m, q)`` order."""
    return [
        ParamSet(a, b, lam_, mu_, al, m_, q_)
        for lam_ in lam
        for mu_ in mu
        for al in alpha
        for m_ in m
        for q_ in q
    ]


__all__ = [
    "THM22",
    "THM24",
    "THM26",
    "THEOREMS",
    "ParamSet",
    "ValidationResult",
    "TestFunction",
    "validate_params",
    "validate_domain",
    "require_domain",
    "eval_points",
    "derivative_error",
    "power",
    "exponential",
    "x_exp",
    "reciprocal",
    "sine",
    "catalog",
    "CATALOG_IDS",
    "get_function",
    "parse_real",
    "random_params",
    "params_grid",
]
