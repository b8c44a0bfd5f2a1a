"""Limits of nu_{n,a}/n and M(x^n - a x - 1) as n -> infinity.

The measure limit is available two ways, used to cross-check each other:

* quadrature of (1/2 pi) int_0^{arccos(-a/2)} ln(1 + a^2 + 2a cos t) dt,
  by adaptive Gauss-Legendre panels;
* the closed form (1/pi) (Cl2(2 arcsin(a/2)) + 2 arcsin(a/2) ln a), where
  Cl2(theta) = Im Li2(e^{i theta}) is the Clausen function.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Callable, Union

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import bernoulli

from .errors import DomainError

GL_ORDER = 15
CLAUSEN_TERMS = 30


def _check_a(a: float) -> float:
    a = float(a)
    if not 0.0 < a <= 2.0:
        raise DomainError(f"a must lie in (0, 2], got a={a}")
    return a


def rate_limit(a: float) -> float:
    """arccos(-a/2) / pi."""
    a = _check_a(a)
    return math.acos(-a / 2.0) / math.pi


# --- quadrature -----------------------------------------------------------

@dataclass
class QuadratureInfo:
    panels: int = 0
    evaluations: int = 0


@lru_cache(maxsize=None)
def _gl_rule(order: int):
    return leggauss(order)


def gauss_legendre_adaptive(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float,
                            tol: float, order: int = GL_ORDER, max_depth: int = 40,
                            info: QuadratureInfo | None = None) -> float:
    """Integrate ``f`` over [lo, hi] to absolute error ``tol``.

    Each panel is compared with the sum over its two halves; panels are
    split until the difference is below their share of the tolerance.
    ``f`` must accept a numpy array of abscissae.
    """
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")
    x, w = _gl_rule(order)
    info = QuadratureInfo() if info is None else info

    def panel(a, b):
        half = 0.5 * (b - a)
        info.evaluations += order
        return half * float(np.dot(w, f(0.5 * (a + b) + half * x)))

    accepted = []
    stack = [(lo, hi, panel(lo, hi), tol, 0)]
    while stack:
        a, b, whole, t, depth = stack.pop()
        m = 0.5 * (a + b)
        left, right = panel(a, m), panel(m, b)
        if abs(left + right - whole) <= t or depth >= max_depth:
            accepted.append(left + right)
            info.panels += 2
        else:
            stack.append((m, b, right, 0.5 * t, depth + 1))
            stack.append((a, m, left, 0.5 * t, depth + 1))
    return math.fsum(accepted)


def measure_integrand(a: float):
    return lambda t: np.log(1.0 + a * a + 2.0 * a * np.cos(t))


def log_measure_limit_quadrature(a: float, tol: float = 1e-12,
                                 info: QuadratureInfo | None = None) -> float:
    a = _check_a(a)
    integral = gauss_legendre_adaptive(measure_integrand(a), 0.0, math.acos(-a / 2.0),
                                       tol, info=info)
    return integral / (2.0 * math.pi)


def measure_limit_quadrature(a: float, tol: float = 1e-12) -> float:
    return math.exp(log_measure_limit_quadrature(a, tol))


# --- Clausen function -----------------------------------------------------

@lru_cache(maxsize=None)
def _clausen_coeffs(terms: int) -> np.ndarray:
    # |B_2k| / (2k (2k+1)!)
    b = bernoulli(2 * terms)
    return np.array([abs(b[2 * j]) / (2 * j) / math.factorial(2 * j + 1)
                     for j in range(1, terms + 1)])


def _clausen_reduced(t: np.ndarray, terms: int) -> np.ndarray:
    # t in [0, pi]; series converges like (t / 2 pi)^2k
    coeffs = _clausen_coeffs(terms)
    t2 = t * t
    acc = np.zeros_like(t)
    for c in coeffs[::-1]:
        acc = acc * t2 + c
    with np.errstate(divide="ignore", invalid="ignore"):
        lead = np.where(t > 0, t - t * np.log(np.where(t > 0, t, 1.0)), 0.0)
    return lead + acc * t2 * t


def clausen(theta, terms: int = CLAUSEN_TERMS):
    """Cl2(theta) = sum_k sin(k theta) / k^2 = Im Li2(e^{i theta}).

    Uses the Bernoulli-number expansion
    Cl2(t) = t - t ln t + sum_k |B_2k| t^(2k+1) / (2k (2k+1)!)
    on [0, pi], extended by oddness and 2 pi periodicity.
    """
    th = np.asarray(theta, dtype=float)
    t = np.mod(th, 2.0 * math.pi)
    flip = t > math.pi
    t = np.where(flip, 2.0 * math.pi - t, t)
    out = np.where(flip, -1.0, 1.0) * _clausen_reduced(t, terms)
    # sin(k pi) = 0 exactly
    out = np.where(t == math.pi, 0.0, out)
    return float(out) if out.ndim == 0 else out


def log_measure_limit_maillot(a: float) -> float:
    a = _check_a(a)
    arg_z = 2.0 * math.asin(a / 2.0)
    return (clausen(arg_z) + arg_z * math.log(a)) / math.pi


def measure_limit_maillot(a: float) -> float:
    """exp((1/pi) (Cl2(arg z) + arg z ln a)) with z = exp(2i arcsin(a/2))."""
    return math.exp(log_measure_limit_maillot(a))


# --- reports and extended parameters ----------------------------------------

@dataclass(frozen=True)
class LimitReport:
    a: float
    rate_limit: float
    measure_limit_quadrature: float
    measure_limit_dilog: float
    cross_delta: float
    method: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def limit_report(a: float, tol: float = 1e-12) -> LimitReport:
    info = QuadratureInfo()
    quad = math.exp(log_measure_limit_quadrature(a, tol, info))
    dilog = measure_limit_maillot(a)
    return LimitReport(
        a=float(a),
        rate_limit=rate_limit(a),
        measure_limit_quadrature=quad,
        measure_limit_dilog=dilog,
        cross_delta=abs(quad - dilog),
        method={"quadrature": f"adaptive Gauss-Legendre {GL_ORDER}-point",
                "quadrature_tol": tol, "panels": info.panels,
                "nodes": info.evaluations, "clausen_terms": CLAUSEN_TERMS},
    )


@dataclass(frozen=True)
class ExtendedLimit:
    value: float
    regime: str
    degenerate: bool = False
    diagnostics: tuple[str, ...] = ()


def measure_limit_extended(a: Union[float, complex], rational_angle: bool = False,
                           tol: float = 1e-12) -> ExtendedLimit:
    """Limit of M(x^n - a x - 1) for any real or complex ``a``.

    For |a| > 2 one root tends to -1/a and the rest to the unit circle, so
    the limit is |a|.  For 0 < |a| <= 2 with arg a a rational multiple of
    2 pi, rotating x removes the phase and the limit is the real-a limit
    at |a|.  ``rational_angle`` records that the caller vouches for that
    hypothesis; it is not checked numerically.  a = 0 gives x^n - 1,
    measure 1, flagged as degenerate.
    """
    a = complex(a)
    r = abs(a)
    if r == 0.0:
        return ExtendedLimit(1.0, "zero", degenerate=True,
                             diagnostics=("x^n - 1: every root on the unit circle",))
    if r > 2.0:
        return ExtendedLimit(r, "large-modulus")
    notes = []
    if a.imag != 0.0:
        regime = "complex"
        if not rational_angle:
            notes.append(f"arg a = {cmath.phase(a):.17g} assumed a rational multiple of 2 pi")
    elif a.real < 0.0:
        regime = "negative"
        notes.append("a < 0 reduced through arg a = pi (x -> -x along even n)")
    else:
        regime = "real"
    return ExtendedLimit(measure_limit_quadrature(r, tol), regime, diagnostics=tuple(notes))
