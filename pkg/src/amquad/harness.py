"""Verification campaigns: sweep functions x parameter grids, write reports.

Config files are single JSON documents::

    {
      "functions": ["pow2", "exp"],          # catalog ids; "pow:<s>" allowed
      "lambda": ["0", "1/3", "1/2", "1"],    # numbers or fraction strings
      "mu": [0, 0.25, 0.5, 0.75, 1],
      "alpha": [0.25, 0.5, 1],
      "m": [0.25, 0.5, 1],
      "q": [1, 2, 3],
      "a": 0, "b": 1,
      "tol": 1e-10,                          # integrator tolerance
      "cert_n_t": 4096,                      # path certificate grid
      "domain_upper": 4.0,                   # D for non-periodic entries
      "random_draws": 0,                     # extra seeded ParamSets per function
      "seed": 0,
      "out": "report.csv",
      "format": "csv"                        # or "json"
    }

Only ``functions`` is required; everything else falls back to
:data:`DEFAULT_CONFIG`.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from .bounds import VIOLATION_SLACK, bound_report, select_case
from .convexity import DEFAULT_CERT_TOL, DEFAULT_PATH_GRID, check_path_hypothesis
from .errors import AmquadError, ConfigError
from .funcmodel import (
    CATALOG_IDS,
    DEFAULT_DOMAIN,
    THM24,
    ParamSet,
    TestFunction,
    get_function,
    parse_real,
    random_params,
    validate_params,
)
from .kernels import identity_residual
from .quadrature import default_tol

log = logging.getLogger(__name__)

CSV_COLUMNS = (
    "function", "a", "b", "lambda", "mu", "alpha", "m", "q", "case",
    "cert_violation", "true_error",
    "bound_t22", "bound_c23", "bound_t24", "bound_t26", "bound_simpson_classical",
    "ratio_t22", "ratio_t24", "ratio_t26", "identity_residual",
    "cert_t24_violation",
)

DEFAULT_CONFIG: dict[str, Any] = {
    "functions": list(CATALOG_IDS),
    "lambda": [0.0, 1 / 3, 0.5, 1.0],
    "mu": [0.0, 0.25, 0.5, 0.75, 1.0],
    "alpha": [0.25, 0.5, 1.0],
    "m": [0.25, 0.5, 1.0],
    "q": [1.0, 2.0, 3.0],
    "a": 0.0,
    "b": 1.0,
    "tol": None,
    "cert_n_t": DEFAULT_PATH_GRID,
    "domain_upper": DEFAULT_DOMAIN,
    "random_draws": 0,
    "seed": 0,
    "out": None,
    "format": "csv",
}


@dataclass(frozen=True)
class CampaignConfig:
    functions: tuple[str, ...]
    lam: tuple[float, ...]
    mu: tuple[float, ...]
    alpha: tuple[float, ...]
    m: tuple[float, ...]
    q: tuple[float, ...]
    a: float = 0.0
    b: float = 1.0
    tol: float = 1e-10
    cert_n_t: int = DEFAULT_PATH_GRID
    domain_upper: float = DEFAULT_DOMAIN
    random_draws: int = 0
    seed: int = 0
    out: str | None = None
    format: str = "csv"

    @classmethod
    def from_mapping(cls, data: dict[str, Any]) -> "CampaignConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(data) - set(DEFAULT_CONFIG)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        merged = {**DEFAULT_CONFIG, **data}
        if not merged["functions"]:
            raise ConfigError("no functions selected")

        def grid(name: str) -> tuple[float, ...]:
            values = merged[name]
            if not isinstance(values, list) or not values:
                raise ConfigError(f"grid {name!r} must be a non-empty list")
            try:
                return tuple(parse_real(v) for v in values)
            except ValueError as exc:
                raise ConfigError(f"grid {name!r}: {exc}") from exc

        try:
            tol = default_tol() if merged["tol"] is None else parse_real(merged["tol"])
            cfg = cls(
                functions=tuple(str(f) for f in merged["functions"]),
                lam=grid("lambda"),
                mu=grid("mu"),
                alpha=grid("alpha"),
                m=grid("m"),
                q=grid("q"),
                a=parse_real(merged["a"]),
                b=parse_real(merged["b"]),
                tol=tol,
                cert_n_t=int(merged["cert_n_t"]),
                domain_upper=parse_real(merged["domain_upper"]),
                random_draws=int(merged["random_draws"]),
                seed=int(merged["seed"]),
                out=merged["out"],
                format=str(merged["format"]),
            )
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        if not cfg.tol > 0:
            raise ConfigError("tol must be positive")
        if cfg.format not in ("csv", "json"):
            raise ConfigError(f"format must be 'csv' or 'json', not {cfg.format!r}")
        if cfg.random_draws < 0 or cfg.cert_n_t < 1:
            raise ConfigError("random_draws must be >= 0 and cert_n_t >= 1")
        for fid in cfg.functions:
            try:
                get_function(fid, cfg.domain_upper)
            except (KeyError, ValueError) as exc:
                raise ConfigError(str(exc)) from exc
        return cfg


def load_config(path: str | os.PathLike) -> CampaignConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    return CampaignConfig.from_mapping(data)


@dataclass
class ReportRow:
    function: str
    params: ParamSet
    case: str = ""
    cert_passed: bool = False
    cert_violation: float | None = None
    cert_t24_passed: bool | None = None
    cert_t24_violation: float | None = None
    true_error: float | None = None
    bound_t22: float | None = None
    bound_c23: float | None = None
    bound_t24: float | None = None
    bound_t26: float | None = None
    bound_simpson_classical: float | None = None
    ratio_t22: float | None = None
    ratio_t24: float | None = None
    ratio_t26: float | None = None
    identity_residual: float | None = None
    violations: tuple[str, ...] = ()
    error: str | None = None

    @property
    def violated(self) -> bool:
        return bool(self.violations)

    def as_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"function": self.function, **self.params.as_dict()}
        for f in fields(self):
            if f.name in ("function", "params"):
                continue
            value = getattr(self, f.name)
            out[f.name] = list(value) if isinstance(value, tuple) else value
        return out


@dataclass
class CampaignSummary:
    rows: list[ReportRow]
    n_rows: int
    n_cert_pass: int
    n_cert_t24_pass: int
    n_violations: int
    violations_by_theorem: dict[str, int]
    worst_ratio: dict[str, float]
    n_errors: int
    n_skipped: int
    skip_reasons: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.n_violations == 0

    def as_dict(self) -> dict[str, Any]:
        return {
            "rows": self.n_rows,
            "certificate_passes": self.n_cert_pass,
            "t24_certificate_passes": self.n_cert_t24_pass,
            "bound_violations": self.n_violations,
            "violations_by_theorem": self.violations_by_theorem,
            "worst_ratio": self.worst_ratio,
            "row_errors": self.n_errors,
            "skipped": self.n_skipped,
        }


def evaluate_row(f: TestFunction, p: ParamSet, cfg: CampaignConfig) -> ReportRow:
    """Evaluate one (function, ParamSet) pair; failures are stored in the row."""
    row = ReportRow(function=f.id, params=p)
    try:
        row.case = select_case(p).value
        cert = check_path_hypothesis(f, p, n_t=cfg.cert_n_t, tol=DEFAULT_CERT_TOL)
        row.cert_passed = cert.passed
        row.cert_violation = cert.max_violation
        rep = bound_report(f, p, cfg.tol, certificate=cert, specializations=False)
        row.true_error = rep.true_error
        row.bound_t22 = rep.bounds.get("t22")
        row.bound_c23 = rep.bounds.get("c23")
        row.bound_t24 = rep.bounds.get("t24")
        row.bound_t26 = rep.bounds.get("t26")
        row.bound_simpson_classical = rep.bounds.get("simpson_classical")
        row.ratio_t22 = rep.ratios.get("t22")
        row.ratio_t24 = rep.ratios.get("t24")
        row.ratio_t26 = rep.ratios.get("t26")
        if rep.hadamard_certificate is not None:
            row.cert_t24_passed = rep.hadamard_certificate.passed
            row.cert_t24_violation = rep.hadamard_certificate.max_violation
        row.violations = rep.violations
        row.identity_residual = identity_residual(f, p, cfg.tol).residual
    except (AmquadError, ValueError, ArithmeticError) as exc:
        row.error = f"{type(exc).__name__}: {exc}"
        log.warning("%s at %s: %s", f.id, p.as_dict(), row.error)
    return row


def campaign_params(cfg: CampaignConfig, f: TestFunction) -> tuple[list[ParamSet], list[str]]:
    """Grid points (plus seeded random draws) for one function, and skip reasons."""
    params: list[ParamSet] = []
    skipped: list[str] = []
    for lam in cfg.lam:
        for mu in cfg.mu:
            for alpha in cfg.alpha:
                for m in cfg.m:
                    for q in cfg.q:
                        p = ParamSet(cfg.a, cfg.b, lam, mu, alpha, m, q)
                        res = validate_params(p)
                        if res:
                            params.append(p)
                        else:
                            skipped.append(f"{f.id} {p.as_dict()}: {'; '.join(res.violations)}")
    if cfg.random_draws:
        # per-function stream so adding a function never changes another's draws
        rng = np.random.default_rng([cfg.seed, CATALOG_IDS.index(f.id) if f.id in CATALOG_IDS else 99])
        params.extend(
            random_params(rng, theorem=THM24, domain_upper=f.domain_upper)
            for _ in range(cfg.random_draws)
        )
    return params, skipped


def run_campaign(cfg: CampaignConfig, write: bool = True) -> CampaignSummary:
    """Evaluate every (function, ParamSet) row in a fixed order.

    Row order is function order, then grid order ``(lambda, mu, alpha, m, q)``,
    then random draws, so output is reproducible byte for byte.
    """
    rows: list[ReportRow] = []
    skips: list[str] = []
    for fid in cfg.functions:
        f = get_function(fid, cfg.domain_upper)
        params, skipped = campaign_params(cfg, f)
        for reason in skipped:
            log.info("skipped %s", reason)
        skips.extend(skipped)
        rows.extend(evaluate_row(f, p, cfg) for p in params)

    by_thm = {k: 0 for k in ("t22", "c23", "t24", "t26")}
    worst = {k: 0.0 for k in ("t22", "t24", "t26")}
    for r in rows:
        for v in r.violations:
            by_thm[v] = by_thm.get(v, 0) + 1
        if r.cert_passed:
            for k in ("t22", "t26"):
                val = getattr(r, f"ratio_{k}")
                if val is not None:
                    worst[k] = max(worst[k], val)
        if r.cert_t24_passed and r.ratio_t24 is not None:
            worst["t24"] = max(worst["t24"], r.ratio_t24)

    summary = CampaignSummary(
        rows=rows,
        n_rows=len(rows),
        n_cert_pass=sum(r.cert_passed for r in rows),
        n_cert_t24_pass=sum(bool(r.cert_t24_passed) for r in rows),
        n_violations=sum(r.violated for r in rows),
        violations_by_theorem=by_thm,
        worst_ratio=worst,
        n_errors=sum(r.error is not None for r in rows),
        n_skipped=len(skips),
        skip_reasons=skips,
    )
    if skips:
        log.info("%d grid points skipped", len(skips))
    if write and cfg.out:
        emit_report(rows, cfg.format, cfg.out)
    return summary


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------


def _fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".17g")
    return str(value)


def _csv_record(row: ReportRow) -> list[str]:
    d = row.as_dict()
    return [_fmt(d[col]) for col in CSV_COLUMNS]


def render_csv(rows: Iterable[ReportRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(_csv_record(row))
    return buf.getvalue()


def render_json(rows: Iterable[ReportRow]) -> str:
    # repr-based float output is the shortest string that round-trips exactly
    return json.dumps([r.as_dict() for r in rows], indent=1) + "\n"


def emit_report(rows: Sequence[ReportRow], format: str, path: str | os.PathLike) -> None:
    if format == "csv":
        text = render_csv(rows)
    elif format == "json":
        text = render_json(rows)
    else:
        raise ValueError(f"unknown report format {format!r}")
    Path(path).write_text(text, encoding="utf-8")


__all__ = [
    "CSV_COLUMNS",
    "DEFAULT_CONFIG",
    "VIOLATION_SLACK",
    "CampaignConfig",
    "CampaignSummary",
    "ReportRow",
    "load_config",
    "evaluate_row",
    "campaign_params",
    "run_campaign",
    "render_csv",
    "render_json",
    "emit_report",
]
