"""Command-line entry point: ``amquad {verify,identity,coeffs,bound}``.

Exit codes: 0 success, 1 bound violations (or identity residual above
tolerance), 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .bounds import active_thetas, bound_report, coeffs22
from .errors import AmquadError, ConfigError
from .funcmodel import DEFAULT_DOMAIN, ParamSet, get_function, parse_real, validate_params
from .harness import emit_report, load_config, run_campaign
from .kernels import identity_residual, oracle_plain, oracle_power, oracle_weighted

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    # route usage errors through the documented exit code
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _real(text: str) -> float:
    try:
        return parse_real(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _add_params(sp: argparse.ArgumentParser, *, need_function: bool = True) -> None:
    if need_function:
        sp.add_argument("--f", "--function", dest="function", required=True,
                        help="catalog id (pow2, exp, ...) or pow:<s>")
        sp.add_argument("--domain-upper", type=_real, default=DEFAULT_DOMAIN)
    sp.add_argument("--a", type=_real, default=0.0)
    sp.add_argument("--b", type=_real, default=1.0)
    sp.add_argument("--lambda", dest="lam", type=_real, required=True)
    sp.add_argument("--mu", type=_real, required=True)
    sp.add_argument("--alpha", type=_real, default=1.0)
    sp.add_argument("--m", type=_real, default=1.0)
    sp.add_argument("--q", type=_real, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="amquad", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run a campaign from a JSON config")
    v.add_argument("--config", required=True)
    v.add_argument("--out", help="override the report path from the config")
    v.add_argument("--format", choices=("csv", "json"))

    i = sub.add_parser("identity", help="error-identity residual at one point")
    _add_params(i)
    i.add_argument("--tol", type=_real, default=None, help="integrator tolerance")
    i.add_argument("--max-residual", type=_real, default=1e-8)

    c = sub.add_parser("coeffs", help="closed-form coefficients next to numeric oracles")
    _add_params(c, need_function=False)
    c.add_argument("--p", dest="pexp", type=_real, action="append",
                   help="Hoelder exponent for the theta rows (repeatable)")

    b = sub.add_parser("bound", help="all applicable bounds at one point, as JSON")
    _add_params(b)
    b.add_argument("--tol", type=_real, default=None)
    return parser


def _params(ns: argparse.Namespace) -> ParamSet:
    return ParamSet(ns.a, ns.b, ns.lam, ns.mu, ns.alpha, ns.m, ns.q)


def _checked(p: ParamSet) -> ParamSet:
    res = validate_params(p)
    if not res:
        raise ConfigError("invalid parameters: " + "; ".join(res.violations))
    return p


def _rational(x: float) -> str:
    fr = Fraction(x).limit_denominator(100_000)
    return str(fr) if abs(float(fr) - x) < 1e-15 else ""


def cmd_verify(ns: argparse.Namespace) -> int:
    cfg = load_config(ns.config)
    summary = run_campaign(cfg, write=False)
    out = ns.out or cfg.out
    if out:
        emit_report(summary.rows, ns.format or cfg.format, out)
    print(json.dumps(summary.as_dict(), indent=2))
    return EXIT_OK if summary.ok else EXIT_VIOLATION


def cmd_identity(ns: argparse.Namespace) -> int:
    f = get_function(ns.function, ns.domain_upper)
    r = identity_residual(f, _checked(_params(ns)), ns.tol)
    print(f"lhs      = {r.lhs:.17g}")
    print(f"rhs      = {r.rhs:.17g}")
    print(f"residual = {r.residual:.3e}")
    return EXIT_OK if r.residual <= ns.max_residual else EXIT_VIOLATION


def cmd_coeffs(ns: argparse.Namespace) -> int:
    p = _checked(_params(ns))
    cs = coeffs22(p.lam, p.mu, p.alpha)
    oracle = {
        "eps1": oracle_plain("left", p), "eps3": oracle_plain("right", p),
        "delta1": oracle_weighted("left", "t^alpha", p),
        "delta2": oracle_weighted("left", "1-t^alpha", p),
        "beta1": oracle_weighted("right", "t^alpha", p),
        "beta2": oracle_weighted("right", "1-t^alpha", p),
    }
    # both case formulas describe the same integral; copy to the alternates
    for lo, hi in (("eps1", "eps2"), ("eps3", "eps4"), ("delta1", "delta3"),
                   ("delta2", "delta4"), ("beta1", "beta3"), ("beta2", "beta4")):
        oracle[hi] = oracle[lo]
    active = {"eps1", "delta1", "delta2"} if cs.left_low else {"eps2", "delta3", "delta4"}
    active |= {"eps3", "beta1", "beta2"} if cs.right_low else {"eps4", "beta3", "beta4"}

    print(f"lambda={p.lam!r} mu={p.mu!r} alpha={p.alpha!r}  case {cs.case.value}")
    print(f"{'name':<8} {'closed form':>24} {'rational':>12} {'oracle':>24} {'|diff|':>10}")
    for name, value in cs.as_dict().items():
        if name not in active:
            continue
        diff = abs(value - oracle[name])
        print(f"{name:<8} {value:>24.17g} {_rational(value):>12} {oracle[name]:>24.17g} {diff:>10.2e}")
    for pexp in ns.pexp or ():
        if not pexp > 1:
            raise ConfigError("--p must exceed 1")
        left = (pexp + 1) * oracle_power("left", p, pexp)
        right = (pexp + 1) * oracle_power("right", p, pexp)
        names = ("theta2" if cs.left_low else "theta1", "theta3" if cs.right_low else "theta4")
        values = active_thetas(p.lam, p.mu, pexp)
        for name, value, ref in zip(names, values, (left, right)):
            label = f"{name}(p={pexp:g})"
            print(f"{label:<8} {value:>24.17g} {'':>12} {ref:>24.17g} "
                  f"{abs(value - ref):>10.2e}")
    return EXIT_OK


def cmd_bound(ns: argparse.Namespace) -> int:
    f = get_function(ns.function, ns.domain_upper)
    rep = bound_report(f, _checked(_params(ns)), ns.tol)
    print(json.dumps(rep.as_dict(), indent=2))
    return EXIT_VIOLATION if rep.violations else EXIT_OK


_COMMANDS = {"verify": cmd_verify, "identity": cmd_identity, "coeffs": cmd_coeffs, "bound": cmd_bound}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(ns.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return _COMMANDS[ns.command](ns)
    except (AmquadError, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) else exc
        print(f"amquad: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
