"""All-roots solver for dense polynomials and the trinomials x^n - a x^k - 1.

Roots are found by Aberth-Ehrlich simultaneous iteration followed by a
couple of Newton polishing sweeps.  For real coefficients the result is
made exactly conjugate-symmetric.  The module also houses the real-root
brackets (``beta``, ``alpha``, ``gamma1``/``gamma2``) that confine the
roots of ``x^n - a x^k - 1`` to an annulus around the unit circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from scipy.optimize import brentq, linear_sum_assignment

from .errors import ConvergenceError, DomainError, ValidationError

EPS = np.finfo(float).eps
TWO_PI = 2.0 * math.pi
# fractional part of the golden ratio, used to rotate the starting circle
_GUESS_OFFSET = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-12
    max_iter: int = 500
    pairing_tol: float = 1e-12
    polish_steps: int = 2


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Dense polynomial, coefficients highest degree first."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs)
        if c.dtype.kind not in "fc":
            c = c.astype(float)
        if c.ndim != 1 or c.size == 0:
            raise ValidationError("coefficients must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(c)):
            raise ValidationError("coefficients must be finite")
        nz = np.flatnonzero(c)
        if nz.size == 0:
            raise ValidationError("zero polynomial has no well-defined roots")
        c = c[nz[0]:]
        if np.iscomplexobj(c) and np.all(c.imag == 0):
            c = c.real.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def leading(self):
        return self.coeffs[0]

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.coeffs)

    def __call__(self, z):
        return np.polyval(self.coeffs, z)

    def newton_ratio(self, z):
        """p(z)/p'(z) and |p(z)| / sum|c_i||z|^(n-i), both overflow-safe.

        Outside the unit disk the reversed polynomial is evaluated at 1/z,
        so z^n is never formed explicitly.
        """
        z = np.asarray(z, dtype=complex)
        n = self.degree
        w = np.empty_like(z)
        rel = np.empty(z.shape)
        out = np.abs(z) > 1.0
        inside = ~out
        if inside.any():
            p, dp, s = _horner(self.coeffs, z[inside])
            with np.errstate(divide="ignore", invalid="ignore"):
                w[inside] = p / dp
            rel[inside] = np.abs(p) / s
        if out.any():
            zo = z[out]
            u = 1.0 / zo
            q, dq, s = _horner(self.coeffs[::-1], u)
            with np.errstate(divide="ignore", invalid="ignore"):
                w[out] = zo * q / (n * q - u * dq)
            rel[out] = np.abs(q) / s
        return w, rel


@dataclass(frozen=True)
class TrinomialSpec:
    """x^n - a x^k - 1."""

    n: int
    a: Union[float, complex]
    k: int = 1

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValidationError(f"degree n must be an integer >= 2, got {self.n!r}")
        if self.k not in (1, 2, 4):
            raise ValidationError(f"inner exponent k must be 1, 2 or 4, got {self.k!r}")
        if self.k >= self.n:
            raise ValidationError(f"need k < n, got k={self.k}, n={self.n}")
        if not np.isfinite(self.a):
            raise ValidationError("parameter a must be finite")

    @property
    def is_real(self) -> bool:
        return np.isrealobj(self.a) or complex(self.a).imag == 0

    @property
    def a_real(self) -> float:
        if not self.is_real:
            raise DomainError(f"operation needs real a, got {self.a!r}")
        return float(np.real(self.a))

    def to_polynomial(self) -> Polynomial:
        dtype = float if self.is_real else complex
        c = np.zeros(self.n + 1, dtype=dtype)
        c[0] = 1.0
        c[self.n - self.k] = -(np.real(self.a) if self.is_real else self.a)
        c[self.n] = -1.0
        return Polynomial(c)

    def newton_ratio(self, z):
        """Closed-form counterpart of :meth:`Polynomial.newton_ratio`."""
        z = np.asarray(z, dtype=complex)
        n, k, a = self.n, self.k, self.a
        aa = abs(a)
        w = np.empty_like(z)
        rel = np.empty(z.shape)
        out = np.abs(z) > 1.0
        inside = ~out
        with np.errstate(divide="ignore", invalid="ignore"):
            if inside.any():
                zi = z[inside]
                zk1 = zi ** (k - 1)
                zn1 = zi ** (n - 1)
                p = zn1 * zi - a * zk1 * zi - 1.0
                w[inside] = p / (n * zn1 - a * k * zk1)
                r = np.abs(zi)
                rel[inside] = np.abs(p) / (r**n + aa * r**k + 1.0)
            if out.any():
                zo = z[out]
                u = 1.0 / zo
                unk = u ** (n - k)
                un = unk * u**k
                q = 1.0 - a * unk - un
                w[out] = zo * q / (n - a * k * unk)
                r = np.abs(u)
                rel[out] = np.abs(q) / (1.0 + aa * r ** (n - k) + r**n)
        return w, rel


@dataclass(frozen=True, eq=False)
class RootSet:
    roots: np.ndarray
    residuals: np.ndarray
    rho: np.ndarray
    phi: np.ndarray
    poly: Polynomial
    source: dict = field(default_factory=dict)

    def __len__(self):
        return self.roots.size

    @property
    def polar(self) -> np.ndarray:
        """(rho, phi) pairs, phi in [0, 2 pi)."""
        return np.column_stack([self.rho, self.phi])

    @property
    def max_residual(self) -> float:
        return float(self.residuals.max()) if self.residuals.size else 0.0


@dataclass(frozen=True)
class RealBrackets:
    beta: float
    alpha: float
    gamma1: Optional[float] = None
    gamma2: Optional[float] = None


def normalize_angle(phi):
    """Map angles into [0, 2 pi)."""
    phi = np.mod(phi, TWO_PI)
    return np.where(phi >= TWO_PI, 0.0, phi)


def residual_bound(poly: Polynomial, z, tol: float):
    """Certified residual ceiling: tol * max|c| * max(1, |z|)^n."""
    r = np.maximum(1.0, np.abs(z))
    return tol * np.abs(poly.coeffs).max() * r**poly.degree


def _horner(coeffs, z):
    """p(z), p'(z) and sum |c_i| |z|^(n-i) by Horner's rule."""
    r = np.abs(z)
    p = np.full(z.shape, coeffs[0], dtype=complex)
    dp = np.zeros(z.shape, dtype=complex)
    s = np.full(r.shape, abs(coeffs[0]))
    for c in coeffs[1:]:
        dp = dp * z + p
        p = p * z + c
        s = s * r + abs(c)
    return p, dp, s


def _aberth(ratio, z0: np.ndarray, max_iter: int):
    z = z0.copy()
    n = z.size
    active = np.ones(n, dtype=bool)
    for it in range(1, max_iter + 1):
        w, rel = ratio(z)
        active &= rel > 4.0 * n * EPS
        if not active.any():
            return z, it
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        with np.errstate(divide="ignore", invalid="ignore"):
            s = (1.0 / diff).sum(axis=1)
            delta = w / (1.0 - w * s)
        bad = ~np.isfinite(delta)
        if bad.any():
            # derivative vanished or two iterates collided: nudge off the spot
            delta[bad] = 1e-3 * np.maximum(np.abs(z[bad]), 1.0) * np.exp(1j * _GUESS_OFFSET)
        delta[~active] = 0.0
        z = z - delta
        active &= np.abs(delta) > 2.0 * EPS * np.abs(z)
        if not active.any():
            return z, it
    return z, max_iter


def _newton_polish(ratio, z: np.ndarray, steps: int) -> np.ndarray:
    for _ in range(steps):
        w, rel = ratio(z)
        ok = np.isfinite(w)
        z_new = np.where(ok, z - np.where(ok, w, 0), z)
        _, rel_new = ratio(z_new)
        z = np.where(ok & (rel_new < rel), z_new, z)
    return z


def _pair_conjugates(z: np.ndarray, cfg: SolverConfig):
    """Split roots into reals and upper-half representatives of conjugate pairs.

    Returns None when the iterate is not conjugate-symmetric to within
    pairing tolerance, which happens for clusters of multiple roots.
    """
    scale = np.maximum(1.0, np.abs(z))
    is_real = np.abs(z.imag) <= cfg.pairing_tol * scale
    upper = z[(~is_real) & (z.imag > 0)]
    lower = z[(~is_real) & (z.imag < 0)]
    if upper.size != lower.size:
        return None
    if upper.size:
        cost = np.abs(upper[:, None] - np.conj(lower)[None, :])
        rows, cols = linear_sum_assignment(cost)
        if np.any(cost[rows, cols] > 1e-8 * np.maximum(1.0, np.abs(upper[rows]))):
            return None
        upper = 0.5 * (upper[rows] + np.conj(lower[cols]))
    return z[is_real].real.astype(complex), upper


def _canonical_order(z: np.ndarray) -> np.ndarray:
    phi = normalize_angle(np.angle(z))
    order = np.lexsort((np.abs(z), phi))
    return z[order]


def _initial_guesses(coeffs: np.ndarray) -> np.ndarray:
    """Starting points on circles read off the Newton polygon of ``coeffs``.

    Each edge of the upper convex hull of (i, log|c_i|) spanning indices
    i < j accounts for j - i roots of modulus about (|c_j|/|c_i|)^(1/(j-i)).
    """
    m = coeffs.size - 1
    mag = np.abs(coeffs)
    idx = np.flatnonzero(mag)
    logs = np.log(mag[idx])
    hull = []
    for i, y in zip(idx, logs):
        while len(hull) >= 2:
            (i1, y1), (i2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly above the chord
            if (y2 - y1) * (i - i1) <= (y - y1) * (i2 - i1):
                hull.pop()
            else:
                break
        hull.append((i, y))
    z0 = np.empty(m, dtype=complex)
    pos = 0
    for (i1, y1), (i2, y2) in zip(hull[:-1], hull[1:]):
        cnt = int(i2 - i1)
        radius = math.exp((y2 - y1) / cnt)
        angles = TWO_PI * (np.arange(cnt) + _GUESS_OFFSET) / cnt + 0.5 / m + pos
        z0[pos:pos + cnt] = radius * np.exp(1j * angles)
        pos += cnt
    return z0


def solve(p: Union[Polynomial, TrinomialSpec, Sequence[float]],
          cfg: SolverConfig = SolverConfig()) -> RootSet:
    """All complex roots of ``p`` (with multiplicity), certified by residual.

    ``p`` may be a :class:`Polynomial`, a :class:`TrinomialSpec` (which uses
    a closed-form evaluation during iteration) or a bare coefficient list.
    Raises :class:`ConvergenceError` when some root fails the residual test.
    """
    spec = p if isinstance(p, TrinomialSpec) else None
    poly = spec.to_polynomial() if spec is not None else (
        p if isinstance(p, Polynomial) else Polynomial(np.asarray(p)))
    if poly.degree < 1:
        raise ValidationError("constant polynomial has no roots")

    c = poly.coeffs
    nz = np.flatnonzero(c)
    n_zero = poly.degree - nz[-1]
    core = Polynomial(c[: c.size - n_zero]) if n_zero else poly
    m = core.degree

    ratio = spec.newton_ratio if spec is not None and n_zero == 0 else core.newton_ratio

    iterations = 0
    symmetric = core.is_real
    if m == 0:
        z = np.empty(0, dtype=complex)
    elif m == 1:
        z = np.array([-core.coeffs[1] / core.coeffs[0]], dtype=complex)
    else:
        z0 = _initial_guesses(core.coeffs)
        z, iterations = _aberth(ratio, z0, cfg.max_iter)
        z = _newton_polish(ratio, z, cfg.polish_steps)
        pairs = _pair_conjugates(z, cfg) if core.is_real else None
        if pairs is not None:
            reals, upper = (_newton_polish(ratio, h, cfg.polish_steps) for h in pairs)
            z = np.concatenate([reals.real.astype(complex), upper, np.conj(upper)])
        symmetric = pairs is not None

    z = np.concatenate([z, np.zeros(n_zero, dtype=complex)])
    z = _canonical_order(z)
    residuals = np.abs(poly(z))
    ceiling = residual_bound(poly, z, cfg.tol)
    if np.any(~np.isfinite(z)) or np.any(residuals > ceiling):
        worst = float(np.nanmax(residuals / ceiling))
        raise ConvergenceError(
            f"residual test failed after {iterations} iterations "
            f"(worst residual/ceiling = {worst:.3e})", z, residuals)
    return RootSet(
        roots=z,
        residuals=residuals,
        rho=np.abs(z),
        phi=normalize_angle(np.angle(z)),
        poly=poly,
        source={"method": "aberth-ehrlich", "iterations": iterations,
                "tol": cfg.tol, "max_iter": cfg.max_iter,
                "polish_steps": cfg.polish_steps,
                "conjugate_symmetric": symmetric},
    )


# --- real-root brackets -------------------------------------------------

def _require_positive_a(spec: TrinomialSpec) -> float:
    a = spec.a_real
    if a <= 0:
        raise DomainError(f"bracket needs a > 0, got a={a}")
    return a


def _root_in(f, lo: float, hi: float) -> float:
    return brentq(f, lo, hi, xtol=1e-16, rtol=4 * EPS, maxiter=500)


def bracket_beta(spec: TrinomialSpec) -> float:
    """The unique positive root of x^n - a x^k - 1; it exceeds 1."""
    a = _require_positive_a(spec)
    n, k = spec.n, spec.k
    f = lambda x: x**n - a * x**k - 1.0
    hi = 1.0 + a ** (1.0 / (n - 1)) if k == 1 else 1.0 + max(a, 1.0)
    return _root_in(f, 1.0, hi)


def bracket_alpha(spec: TrinomialSpec) -> float:
    """The positive root of 1 - x^n - a x^k, a lower bound for every |root|."""
    a = _require_positive_a(spec)
    n, k = spec.n, spec.k
    return _root_in(lambda x: 1.0 - x**n - a * x**k, 0.0, 1.0)


def bracket_gamma(spec: TrinomialSpec) -> Optional[tuple[float, float]]:
    """Both roots of a x^k - x^n - 1 on (0, 1], or None when there are none.

    Existence is decided at the analytic maximiser x* = (k a / n)^(1/(n-k)).
    """
    a = spec.a_real
    if not 1.0 < a <= 2.0:
        raise DomainError(f"gamma brackets need a in (1, 2], got a={a}")
    n, k = spec.n, spec.k
    f = lambda x: a * x**k - x**n - 1.0
    x_star = (k * a / n) ** (1.0 / (n - k))
    if x_star >= 1.0 or f(x_star) <= 0.0:
        return None
    g1 = _root_in(f, 0.0, x_star)
    g2 = 1.0 if f(1.0) == 0.0 else _root_in(f, x_star, 1.0)
    return g1, g2


def real_brackets(spec: TrinomialSpec) -> RealBrackets:
    gam = bracket_gamma(spec) if 1.0 < spec.a_real <= 2.0 else None
    return RealBrackets(
        beta=bracket_beta(spec),
        alpha=bracket_alpha(spec),
        gamma1=gam[0] if gam else None,
        gamma2=gam[1] if gam else None,
    )


def _check_matches(rs: RootSet, spec: TrinomialSpec):
    expected = spec.to_polynomial().coeffs
    got = rs.poly.coeffs
    if got.shape != expected.shape or not np.array_equal(got, expected):
        raise ValidationError(f"root set was not solved from {spec}")


def verify_polar_residuals(rs: RootSet, spec: TrinomialSpec) -> np.ndarray:
    """Per-root residuals of the modulus and phase equations of a root.

    Column 0 is |rho^2n - (a^2 rho^2k + 2 a rho^k cos k phi + 1)|, column 1 is
    |a rho^k sin((n-k) phi) + sin(n phi)|.  For k = 1 these are the two
    classical polar equations satisfied by every root of x^n - a x - 1.
    """
    _check_matches(rs, spec)
    a = spec.a_real
    n, k = spec.n, spec.k
    rho, phi = rs.rho, rs.phi
    rk = rho**k
    modulus = np.abs(rho ** (2 * n) - (a * a * rk * rk + 2 * a * rk * np.cos(k * phi) + 1.0))
    phase = np.abs(a * rk * np.sin((n - k) * phi) + np.sin(n * phi))
    return np.column_stack([modulus, phase])
