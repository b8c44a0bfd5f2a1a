"""Grid jobs, row assembly and stable CSV/JSON serialization."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from importlib import resources
from typing import Iterable, Optional, Sequence

import numpy as np

from .analysis import (
    UNIT_TOL,
    AnalysisReport,
    analyze,
    count_outside_unit,
    limacon_curve,
    mahler_measure,
)
from .errors import ConvergenceError, ValidationError
from .limits import limit_report, measure_limit_quadrature, rate_limit
from .poly_solver import SolverConfig, TrinomialSpec, solve

RATE_DIGITS = 5
MEASURE_DIGITS = 7
ERROR_MARK = "ERR"

TABLE_N = (100, 150)
TABLE_A = tuple(round(0.1 * i, 1) for i in range(1, 21))
VERIFY_N = (24, 100, 150, 300)


@dataclass(frozen=True)
class Tolerances:
    unit: float = UNIT_TOL
    solver: float = 1e-12
    quadrature: float = 1e-12


@dataclass(frozen=True)
class GridJob:
    n_values: tuple[int, ...]
    a_values: tuple[float, ...]
    k: tuple[int, ...] = (1,)
    tolerances: Tolerances = field(default_factory=Tolerances)
    full_precision: bool = False
    jobs: int = 1

    def __post_init__(self):
        if not self.n_values:
            raise ValidationError("no n values given")
        if not self.a_values:
            raise ValidationError("no a values given")
        if any(int(n) != n or n < 2 for n in self.n_values):
            raise ValidationError(f"n values must be integers >= 2: {self.n_values}")
        if any(k not in (1, 2, 4) for k in self.k):
            raise ValidationError(f"k must be one of 1, 2, 4: {self.k}")
        if any(not 0.0 < a <= 2.0 for a in self.a_values):
            raise ValidationError(f"a values must lie in (0, 2]: {self.a_values}")


@dataclass(frozen=True)
class TableRow:
    a: float
    nu_rate: dict[int, Optional[float]]
    rate_limit: float
    mahler: dict[int, Optional[float]]
    measure_limit: float


def round_half_even(x: float, digits: int) -> str:
    return str(Decimal(x).quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN))


def fmt(x: Optional[float], digits: int, full: bool) -> str:
    if x is None:
        return ERROR_MARK
    return repr(float(x)) if full else round_half_even(x, digits)


def jnum(x: Optional[float], digits: int, full: bool):
    if x is None:
        return None
    return float(x) if full else float(round_half_even(x, digits))


# --- cells ------------------------------------------------------------------

def _table_cell(args):
    n, a, k, tol = args
    try:
        rs = solve(TrinomialSpec(n, a, k), SolverConfig(tol=tol.solver))
    except ConvergenceError:
        return None, None
    nu, _ = count_outside_unit(rs, tol.unit)
    return nu / n, mahler_measure(rs)


def _verify_cell(args):
    n, a, k, tol = args
    try:
        return analyze(TrinomialSpec(n, a, k), SolverConfig(tol=tol.solver), tol.unit)
    except ConvergenceError as exc:
        return str(exc)


def _run(fn, cells: list, jobs: int) -> list:
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, cells))
    return [fn(c) for c in cells]


def table_rows(job: GridJob) -> list[TableRow]:
    """One row per a; results come back in (a, n) order whatever the job count."""
    k = job.k[0]
    cells = [(n, a, k, job.tolerances) for a in job.a_values for n in job.n_values]
    results = iter(_run(_table_cell, cells, job.jobs))
    rows = []
    for a in job.a_values:
        rates, measures = {}, {}
        for n in job.n_values:
            rates[n], measures[n] = next(results)
        rows.append(TableRow(a, rates, rate_limit(a), measures,
                              measure_limit_quadrature(a, job.tolerances.quadrature)))
    return rows


def verify_reports(job: GridJob) -> list[tuple[TrinomialSpec, object]]:
    specs = [(n, a, k) for a in job.a_values for n in job.n_values for k in job.k if k < n]
    results = _run(_verify_cell, [s + (job.tolerances,) for s in specs], job.jobs)
    return [(TrinomialSpec(*s), r) for s, r in zip(specs, results)]


# --- serialization ------------------------------------------------------------

def table_columns(n_values: Sequence[int]) -> list[str]:
    return (["a"] + [f"nu_rate_n{n}" for n in n_values] + ["rate_limit"]
            + [f"mahler_n{n}" for n in n_values] + ["measure_limit"])


def table_record(row: TableRow, full: bool, as_json: bool) -> list:
    f = jnum if as_json else fmt
    a = row.a if as_json else repr(float(row.a))
    return ([a] + [f(row.nu_rate[n], RATE_DIGITS, full) for n in row.nu_rate]
            + [f(row.rate_limit, RATE_DIGITS, full)]
            + [f(row.mahler[n], MEASURE_DIGITS, full) for n in row.mahler]
            + [f(row.measure_limit, MEASURE_DIGITS, full)])


VERIFY_COLUMNS = ["n", "a", "k", "nu", "dead_band", "containment", "annulus", "monotone",
                  "equispacing", "erdos_turan", "limacon", "max_polar_residual", "status"]


def verdict(v: Optional[bool]) -> str:
    return "n/a" if v is None else ("pass" if v else "FAIL")


def verify_record(spec: TrinomialSpec, rep, as_json: bool) -> list:
    head = [spec.n, float(spec.a), spec.k]
    if not isinstance(rep, AnalysisReport):
        if as_json:
            return head + [None] * 9 + ["error: " + rep]
        return head + [ERROR_MARK] * 9 + ["error"]
    checks = rep.checks()
    verdicts = list(checks.values()) if as_json else [verdict(v) for v in checks.values()]
    status = "fail" if any(v is False for v in checks.values()) else "ok"
    resid = rep.max_polar_residual if as_json else f"{rep.max_polar_residual:.3e}"
    return head + [rep.nu, rep.dead_band_roots] + verdicts + [resid, status]


LIMIT_COLUMNS = ["a", "rate_limit", "measure_limit_quadrature", "measure_limit_dilog",
                 "cross_delta"]


def limit_record(a: float, tol: float, full: bool, as_json: bool) -> list:
    rep = limit_report(a, tol)
    if as_json:
        return [rep.a, jnum(rep.rate_limit, RATE_DIGITS, full),
                jnum(rep.measure_limit_quadrature, MEASURE_DIGITS, full),
                jnum(rep.measure_limit_dilog, MEASURE_DIGITS, full), rep.cross_delta]
    return [repr(rep.a), fmt(rep.rate_limit, RATE_DIGITS, full),
            fmt(rep.measure_limit_quadrature, MEASURE_DIGITS, full),
            fmt(rep.measure_limit_dilog, MEASURE_DIGITS, full), f"{rep.cross_delta:.3e}"]


ROOT_COLUMNS = ["kind", "re", "im", "rho", "phi", "outside"]


def roots_records(spec: TrinomialSpec, samples: int, tol: float) -> list[list]:
    """Root, curve and unit-circle points for plotting, in that order."""
    rs = solve(spec)
    rows = []
    for z, rho, phi in zip(rs.roots, rs.rho, rs.phi):
        rows.append(["root", float(z.real), float(z.imag), float(rho), float(phi),
                     bool(rho > 1.0 + tol)])
    if spec.is_real and spec.a_real > 0:
        for phi, rho in limacon_curve(spec, samples):
            rho, phi = float(rho), float(phi)
            rows.append(["curve", rho * math.cos(phi), rho * math.sin(phi), rho, phi, None])
    for j in range(samples):
        phi = 2.0 * math.pi * j / samples
        rows.append(["unit", math.cos(phi), math.sin(phi), 1.0, phi, None])
    return rows


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return v


def write_csv(columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(v) for v in r])
    return buf.getvalue()


def write_json(command: str, columns: Sequence[str], rows: Iterable[Sequence],
               meta: Optional[dict] = None) -> str:
    doc = {"command": command, "columns": list(columns),
           "rows": [dict(zip(columns, r)) for r in rows]}
    if meta:
        doc["meta"] = meta
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def load_schema() -> dict:
    return json.loads(resources.files("trinomials").joinpath("schema.json").read_text())
