"""Root statistics and structural checks for x^n - a x^k - 1.

Everything here consumes a solved :class:`~trinomials.poly_solver.RootSet`.
The checks are empirical: they test on actual roots the properties that
are known to hold asymptotically (annulus containment, monotone modulus
along the upper half plane, one argument per 2 pi / n window, angular
discrepancy under the Erdos-Turan bound, incidence with the curve
rho^2n = |a rho^k e^{ik phi} + 1|^2).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import mpmath
import numpy as np

from .errors import DomainError, NumericalError, ValidationError
from .poly_solver import (
    TWO_PI,
    RootSet,
    SolverConfig,
    TrinomialSpec,
    bracket_alpha,
    bracket_beta,
    bracket_gamma,
    solve,
    verify_polar_residuals,
)

UNIT_TOL = 1e-10
CURVE_TOL = 1e-8
RADIUS_TOL = 1e-10
MONOTONE_SLACK = 1e-12
N_DISCREPANCY_WINDOWS = 64


@dataclass(frozen=True)
class ErdosTuranResult:
    count: int
    expected: float
    bound: float
    ok: bool


@dataclass(frozen=True)
class AnalysisReport:
    spec: TrinomialSpec
    nu: int
    rate: float
    mahler: float
    house: float
    dead_band_roots: int
    monotone_ok: Optional[bool]
    equispaced_ok: Optional[bool]
    discrepancy: tuple[float, float]
    containment_ok: bool
    annulus_ok: Optional[bool]
    limacon_ok: bool
    max_polar_residual: float
    exceptional_root: Optional[float]
    solver: dict = field(default_factory=dict)

    @property
    def discrepancy_ok(self) -> bool:
        return self.discrepancy[0] < self.discrepancy[1]

    def checks(self) -> dict[str, Optional[bool]]:
        """Verdict per structural check; None where the check is not defined."""
        return {
            "containment": self.containment_ok,
            "annulus": self.annulus_ok,
            "monotone": self.monotone_ok,
            "equispacing": self.equispaced_ok,
            "erdos_turan": self.discrepancy_ok,
            "limacon": self.limacon_ok,
        }

    def to_dict(self) -> dict:
        d = asdict(self)
        d["spec"] = {"n": self.spec.n, "a": _jsonable(self.spec.a), "k": self.spec.k}
        d["discrepancy"] = {"max_deviation": self.discrepancy[0], "bound": self.discrepancy[1]}
        return d


def _jsonable(a):
    if isinstance(a, complex) or np.iscomplexobj(a):
        a = complex(a)
        return a.real if a.imag == 0 else {"re": a.real, "im": a.imag}
    return float(a)


# --- counts and measures ------------------------------------------------

def count_outside_unit(rs: RootSet, tol: float = UNIT_TOL) -> tuple[int, int]:
    """(nu, dead_band): roots with |z| > 1 + tol and roots with ||z| - 1| <= tol."""
    dev = rs.rho - 1.0
    return int(np.count_nonzero(dev > tol)), int(np.count_nonzero(np.abs(dev) <= tol))


def mahler_measure(rs: RootSet, leading: Optional[float] = None) -> float:
    """|leading| * prod max(|z_i|, 1), accumulated as a sum of logs."""
    lead = rs.poly.leading if leading is None else leading
    logs = np.log(np.maximum(rs.rho, 1.0))
    return abs(lead) * math.exp(math.fsum(logs))


def house(rs: RootSet) -> float:
    return float(rs.rho.max())


# --- structural checks ----------------------------------------------------

def check_monotone_modulus(rs: RootSet, epsilon: Optional[float] = None) -> bool:
    """Moduli are non-increasing in the argument over [0, pi - epsilon].

    The neighbourhood of pi is excluded because two negative real roots can
    appear there (odd n, a > 1) and the modulus need not be monotone between
    them.  Default epsilon is two root spacings, 4 pi / n.
    """
    n = len(rs)
    eps = 4.0 * math.pi / n if epsilon is None else epsilon
    if eps <= 0:
        raise DomainError("epsilon must be positive")
    sel = rs.phi <= math.pi - eps
    if np.count_nonzero(sel) < 2:
        return True
    order = np.argsort(rs.phi[sel], kind="stable")
    rho = rs.rho[sel][order]
    return bool(np.all(np.diff(rho) <= MONOTONE_SLACK))


def equispacing_windows(n: int) -> np.ndarray:
    """Edges of the ceil(n/2) - 1 windows of width 2 pi / n starting at 0."""
    m = -(-n // 2) - 1
    return TWO_PI * np.arange(m + 1) / n


def check_equispacing(rs: RootSet) -> bool:
    """Each window [2 pi j/n, 2 pi (j+1)/n) holds exactly one argument in [0, pi]."""
    n = len(rs)
    edges = equispacing_windows(n)
    if edges.size < 2:
        return True
    phi = rs.phi[rs.phi <= math.pi]
    counts, _ = np.histogram(phi[phi < edges[-1]], bins=edges)
    return bool(np.all(counts == 1))


def _height_ratio(rs: RootSet) -> float:
    c = np.abs(rs.poly.coeffs)
    return float(c.sum() / math.sqrt(c[0] * c[-1]))


def erdos_turan_check(rs: RootSet, alpha_angle: float, beta_angle: float) -> ErdosTuranResult:
    """Compare the root count in a sector with the Erdos-Turan bound.

    The bound is 16 sqrt(n ln R) with R = sum|c_i| / sqrt(|c_0 c_n|), which
    is 2 + |a| for the trinomials.
    """
    if not 0.0 <= alpha_angle < beta_angle <= TWO_PI:
        raise DomainError(f"need 0 <= alpha < beta <= 2 pi, got [{alpha_angle}, {beta_angle}]")
    if rs.poly.coeffs[-1] == 0:
        raise DomainError("Erdos-Turan bound needs a nonzero constant term")
    n = len(rs)
    count = int(np.count_nonzero((rs.phi >= alpha_angle) & (rs.phi <= beta_angle)))
    expected = (beta_angle - alpha_angle) / TWO_PI * n
    bound = 16.0 * math.sqrt(n * math.log(_height_ratio(rs)))
    return ErdosTuranResult(count, expected, bound, abs(count - expected) < bound)


def max_discrepancy(rs: RootSet, windows: int = N_DISCREPANCY_WINDOWS) -> tuple[float, float]:
    """Largest sector deviation over ``windows`` equal sectors, and the bound."""
    edges = TWO_PI * np.arange(windows + 1) / windows
    results = [erdos_turan_check(rs, lo, hi) for lo, hi in zip(edges[:-1], edges[1:])]
    dev = max(abs(r.count - r.expected) for r in results)
    return float(dev), results[0].bound


# --- the curve carrying the roots -----------------------------------------

def _curve_fn(spec: TrinomialSpec, phi):
    a, n, k = spec.a_real, spec.n, spec.k
    c = np.cos(k * np.asarray(phi))

    def f(rho):
        rk = rho**k
        with np.errstate(over="ignore"):
            return rho ** (2 * n) - (a * a * rk * rk + 2.0 * a * rk * c + 1.0)

    return f


def curve_radius(spec: TrinomialSpec, phi: float, grid: int = 256) -> float:
    """Outer solution rho(phi) of rho^2n = a^2 rho^2k + 2 a rho^k cos(k phi) + 1.

    The search runs over [alpha/2, 2 beta].  Near phi = pi/k with a > 1 the
    equation can have extra solutions close to a^(-1/k); the largest one is
    returned, found by scanning down from 2 beta to the first sign change
    and bisecting.
    """
    lo, hi = 0.5 * bracket_alpha(spec), 2.0 * bracket_beta(spec)
    f = _curve_fn(spec, phi)
    xs = np.linspace(hi, lo, grid)
    vals = f(xs)
    change = np.flatnonzero(np.sign(vals[1:]) != np.sign(vals[:-1]))
    if vals[0] <= 0 or change.size == 0:
        raise NumericalError(
            f"no curve crossing for phi={phi} on [{lo:.6g}, {hi:.6g}] "
            f"(f(hi)={vals[0]:.3e}, f(lo)={vals[-1]:.3e})")
    j = change[0]
    b_hi, b_lo = xs[j], xs[j + 1]
    for _ in range(200):
        mid = 0.5 * (b_lo + b_hi)
        if mid in (b_lo, b_hi):
            break
        if f(mid) > 0:
            b_hi = mid
        else:
            b_lo = mid
    return 0.5 * (b_lo + b_hi)


def limacon_curve(spec: TrinomialSpec, num_samples: int) -> np.ndarray:
    """Samples (phi, rho(phi)) with phi uniform on [0, 2 pi)."""
    if num_samples < 2:
        raise ValidationError("num_samples must be at least 2")
    phis = TWO_PI * np.arange(num_samples) / num_samples
    return np.column_stack([phis, [curve_radius(spec, p) for p in phis]])


def _on_curve_mp(spec: TrinomialSpec, z: complex, tol: float) -> bool:
    # Near -1/a (and its k-fold images) the curve pinches to a loop of width
    # ~ |z|^n, below double resolution, and where the pinch is tangential
    # the width at the root's own argument can be ~ |z|^2n.  Refine the root
    # at high precision and look for a sign change with probe steps shrinking
    # through that range; any step <= tol that brackets a sign change
    # certifies a crossing.
    loop_digits = max(0, math.ceil(-spec.n * math.log10(min(abs(z), 1.0))))
    dps = 3 * loop_digits + 40
    with mpmath.workdps(dps):
        n, k, a = spec.n, spec.k, mpmath.mpf(spec.a_real)
        x = mpmath.mpc(z)
        for _ in range(100):
            step = (x**n - a * x**k - 1) / (n * x ** (n - 1) - a * k * x ** (k - 1))
            x -= step
            if abs(step) < mpmath.mpf(10) ** (-dps + 5):
                break
        rho, phi = abs(x), mpmath.arg(x)
        if abs(rho - abs(z)) > tol:
            return False
        c = mpmath.cos(k * phi)
        f = lambda r: r ** (2 * n) - (a * a * r ** (2 * k) + 2 * a * r**k * c + 1)
        for e in range(loop_digits + 10, 2 * loop_digits + 21, 2):
            h = mpmath.mpf(10) ** (-e)
            lo, hi = f(rho - h), f(rho + h)
            if lo == 0 or hi == 0 or (lo < 0) != (hi < 0):
                return True
        return False


def on_curve(rs: RootSet, spec: TrinomialSpec, tol: float = CURVE_TOL) -> np.ndarray:
    """Per root: whether the curve passes within ``tol`` (in rho) of the root.

    Certified by a sign change of the curve equation among rho - tol, rho,
    rho + tol at the root's own argument.  Roots where double precision
    cannot see the crossing are re-checked after high-precision refinement.
    """
    f = _curve_fn(spec, rs.phi)
    s = np.sign(np.stack([f(rs.rho - tol), f(rs.rho), f(rs.rho + tol)]))
    ok = np.any(s == 0, axis=0) | (s.min(axis=0) < s.max(axis=0))
    for i in np.flatnonzero(~ok):
        ok[i] = _on_curve_mp(spec, complex(rs.roots[i]), tol)
    return ok


# --- containment ----------------------------------------------------------

def check_containment(rs: RootSet, spec: TrinomialSpec, tol: float = RADIUS_TOL) -> bool:
    """alpha <= |z| <= beta for every root."""
    alpha, beta = bracket_alpha(spec), bracket_beta(spec)
    return bool(np.all((rs.rho >= alpha - tol) & (rs.rho <= beta + tol)))


def check_annulus(rs: RootSet, spec: TrinomialSpec, tol: float = RADIUS_TOL) -> Optional[bool]:
    """For a in (1, 2]: exactly k roots with |z| <= gamma1, none in (gamma1, gamma2).

    Returns None when the gap does not exist (a <= 1 or n too small).
    """
    a = spec.a_real
    if not 1.0 < a <= 2.0:
        return None
    gam = bracket_gamma(spec)
    if gam is None:
        return None
    g1, g2 = gam
    inner = np.count_nonzero(rs.rho <= g1 + tol)
    in_gap = np.count_nonzero((rs.rho > g1 + tol) & (rs.rho < g2 - tol))
    return bool(inner == spec.k and in_gap == 0)


def exceptional_root(spec: TrinomialSpec, rs: Optional[RootSet] = None,
                     tol: float = RADIUS_TOL) -> Optional[float]:
    """The real root near -1/a that sits inside the gamma1 circle (k = 1, a > 1).

    Returns None when a <= 1 or when the gap circle does not exist yet.
    The solved root is refined by real Newton iteration.
    """
    if spec.k != 1:
        raise DomainError("exceptional root is defined for k = 1")
    a = spec.a_real
    if a <= 1.0 or a > 2.0:
        return None
    gam = bracket_gamma(spec)
    if gam is None:
        return None
    rs = solve(spec) if rs is None else rs
    inner = rs.roots[rs.rho <= gam[0] + tol]
    if inner.size != 1:
        return None
    x = float(inner[0].real)
    n = spec.n
    for _ in range(8):
        step = (x**n - a * x - 1.0) / (n * x ** (n - 1) - a)
        x -= step
        if abs(step) <= 1e-17:
            break
    return x


# --- the k-fold substitution --------------------------------------------

def reduced_spec(spec: TrinomialSpec) -> Optional[TrinomialSpec]:
    """t = x^k turns x^n - a x^k - 1 into t^(n/k) - a t - 1 when k | n."""
    if spec.k == 1:
        return spec
    if spec.n % spec.k or spec.n // spec.k < 2:
        return None
    return TrinomialSpec(spec.n // spec.k, spec.a, 1)


def lift_matches(rs: RootSet, reduced: RootSet, k: int, tol: float = 1e-9) -> bool:
    """Every x-root maps onto a t-root under t = x^k, each t-root hit k times."""
    t = rs.roots**k
    d = np.abs(t[:, None] - reduced.roots[None, :])
    nearest = d.argmin(axis=1)
    close = d[np.arange(t.size), nearest] <= tol * np.maximum(1.0, np.abs(t))
    hits = np.bincount(nearest, minlength=reduced.roots.size)
    return bool(close.all() and np.all(hits == k))


def analyze(spec: TrinomialSpec, cfg: SolverConfig = SolverConfig(),
            unit_tol: float = UNIT_TOL, epsilon: Optional[float] = None) -> AnalysisReport:
    """Solve ``spec`` and run every statistic and check on its roots.

    Monotonicity and equispacing are checked on the reduced trinomial in
    t = x^k (so they are only defined for k | n); the remaining checks act
    on the x-roots directly.
    """
    a = spec.a_real
    if a <= 0:
        raise DomainError(f"analysis needs a > 0, got a={a}")
    rs = solve(spec, cfg)
    nu, dead = count_outside_unit(rs, unit_tol)

    red = reduced_spec(spec)
    monotone = equi = None
    if red is not None:
        rrs = rs if red is spec else solve(red, cfg)
        if red is spec or lift_matches(rs, rrs, spec.k):
            monotone = check_monotone_modulus(rrs, epsilon)
            equi = check_equispacing(rrs)
        else:
            monotone = equi = False

    exc = exceptional_root(spec, rs) if spec.k == 1 else None
    return AnalysisReport(
        spec=spec,
        nu=nu,
        rate=nu / spec.n,
        mahler=mahler_measure(rs),
        house=house(rs),
        dead_band_roots=dead,
        monotone_ok=monotone,
        equispaced_ok=equi,
        discrepancy=max_discrepancy(rs),
        containment_ok=check_containment(rs, spec),
        annulus_ok=check_annulus(rs, spec),
        limacon_ok=bool(on_curve(rs, spec).all()),
        max_polar_residual=float(verify_polar_residuals(rs, spec).max()),
        exceptional_root=exc,
        solver=dict(rs.source),
    )

