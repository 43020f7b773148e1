"""Minimum-uncertainty kappa-Gaussian states in momentum space.

The state family is

    psi(p) = N * [exp_k(-zeta p^2)]^(1/2),

real, even, positive, with a characteristic inverse squared momentum
scale zeta > 0. For k = 0 it is the ordinary Gaussian wave packet; for
k > 0 the tails turn into power laws, psi ~ |p|^(-1/k).

Closed forms implemented here (all as ratios of Gamma functions taken
through log-Gamma differences, with a = 1/(2k)):

    N^2   = (2+k) sqrt(k zeta / 2 pi) Gamma(a+1/4) / Gamma(a-1/4)
    <p^2> = (2+k) / (4 k zeta (2+3k))
            * Gamma(a-3/4) Gamma(a+1/4) / [Gamma(a+3/4) Gamma(a-1/4)]
    dx    = hbar zeta (1-k^2) dp
    F(k)  = (1-k^2)/(2k)
            * Gamma(a-3/4) Gamma(a+5/4) / [Gamma(a+7/4) Gamma(a-1/4)]

<p^2> (and everything built on it) exists only for k < 2/3.

Each closed form has an independent quadrature route: the integral is
split into a core [-P, P] handled by adaptive Gauss-Kronrod and two
power-law tails integrated in w = ln p, where the integrand decays
exponentially and all magnitudes stay in log space (no overflow for
any k < 2/3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .errors import DivergentIntegralError, DomainError
from .kappa_math import (
    TINY_KAPPA,
    KappaLike,
    KappaParameter,
    as_kappa,
    log_gamma,
)

__all__ = [
    "StateSpec",
    "MomentReport",
    "normalization_constant",
    "psi",
    "pdf",
    "log_pdf",
    "second_moment",
    "delta_p",
    "delta_x",
    "f_expectation",
    "f_expectation_quadrature",
    "quadrature_moment",
    "expectation_quadrature",
    "tail_exponent_estimate",
    "moment_report",
]

_LN2 = math.log(2.0)

# Core/tail split point of the quadrature, in units of 1/sqrt(zeta).
_CORE_HALF_WIDTH = 20.0


@dataclass(frozen=True)
class StateSpec:
    """One kappa-Gaussian state: (kappa, zeta, hbar), zeta > 0, hbar > 0."""

    kappa: KappaParameter
    zeta: float
    hbar: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kappa", as_kappa(self.kappa))
        z = float(self.zeta)
        hb = float(self.hbar)
        if not (math.isfinite(z) and z > 0.0):
            raise DomainError(f"zeta must be > 0, got {self.zeta!r}")
        if not (math.isfinite(hb) and hb > 0.0):
            raise DomainError(f"hbar must be > 0, got {self.hbar!r}")
        object.__setattr__(self, "zeta", z)
        object.__setattr__(self, "hbar", hb)

    def require_moment_safe(self):
        if not self.kappa.moment_safe:
            raise DomainError(
                f"moment queries need kappa < 2/3, got kappa={self.kappa.value}"
            )


def _deformation_shape(p, k: float, z: float):
    """sqrt(1 + k^2 z^2 p^4) + k^2 z p^2, overflow-safe via hypot."""
    x = k * z * np.square(p)
    return np.hypot(1.0, x) + k * x


def normalization_constant(spec: StateSpec) -> float:
    """N such that the state integrates to unit probability."""
    k, z = spec.kappa.value, spec.zeta
    if k < TINY_KAPPA:
        return (z / math.pi) ** 0.25
    a = 0.5 / k
    log_n2 = (
        math.log(2.0 + k)
        + 0.5 * (math.log(k * z) - math.log(2.0 * math.pi))
        + log_gamma(a + 0.25)
        - log_gamma(a - 0.25)
    )
    return math.exp(0.5 * log_n2)


def psi(p, spec: StateSpec):
    """Wavefunction amplitude at momentum p (real, positive, even).

    Evaluated as N * exp(-asinh(k zeta p^2) / (2k)), i.e. always on the
    decaying branch of the deformed exponential.
    """
    k, z = spec.kappa.value, spec.zeta
    n = normalization_constant(spec)
    arr = np.asarray(p, dtype=float)
    scalar = arr.ndim == 0
    if k < TINY_KAPPA:
        out = n * np.exp(-0.5 * z * np.square(arr))
    else:
        out = n * np.exp(-np.arcsinh(k * z * np.square(arr)) / (2.0 * k))
    return float(out) if scalar else out


def pdf(p, spec: StateSpec):
    """Momentum probability density |psi(p)|^2."""
    out = np.exp(log_pdf(p, spec))
    return out


def log_pdf(p, spec: StateSpec):
    """ln |psi(p)|^2, useful deep in the power-law tail where pdf underflows."""
    k, z = spec.kappa.value, spec.zeta
    log_n2 = 2.0 * math.log(normalization_constant(spec))
    arr = np.asarray(p, dtype=float)
    scalar = arr.ndim == 0
    if k < TINY_KAPPA:
        out = log_n2 - z * np.square(arr)
    else:
        out = log_n2 - np.arcsinh(k * z * np.square(arr)) / k
    return float(out) if scalar else out


def _log_pdf_at_logp(w: float, spec: StateSpec, log_n2: float) -> float:
    """ln pdf at p = exp(w) without ever forming p (tail-safe)."""
    k, z = spec.kappa.value, spec.zeta
    if k < TINY_KAPPA:
        t = math.log(z) + 2.0 * w
        if t > 700.0:
            return -math.inf
        return log_n2 - math.exp(t)
    x_log = math.log(k * z) + 2.0 * w
    if x_log > 40.0:
        # asinh(X) = ln(2X) + O(1/X^2); the correction is < 1e-35 here
        asinh_val = _LN2 + x_log
    else:
        asinh_val = math.asinh(math.exp(x_log))
    return log_n2 - asinh_val / k


# ---------------------------------------------------------------------------
# closed-form moments
# ---------------------------------------------------------------------------

def second_moment(spec: StateSpec) -> float:
    """<p^2> of the state; requires kappa < 2/3."""
    spec.require_moment_safe()
    k, z = spec.kappa.value, spec.zeta
    if k < TINY_KAPPA:
        return 0.5 / z
    a = 0.5 / k
    log_ratio = (
        log_gamma(a - 0.75)
        + log_gamma(a + 0.25)
        - log_gamma(a + 0.75)
        - log_gamma(a - 0.25)
    )
    return (2.0 + k) / (4.0 * k * z * (2.0 + 3.0 * k)) * math.exp(log_ratio)


def delta_p(spec: StateSpec) -> float:
    """Momentum uncertainty sqrt(<p^2>) (the state has <p> = 0)."""
    return math.sqrt(second_moment(spec))


def delta_x(spec: StateSpec) -> float:
    """Position uncertainty, dx = hbar zeta (1 - kappa^2) dp."""
    k = spec.kappa.value
    return spec.hbar * spec.zeta * (1.0 - k * k) * delta_p(spec)


def f_expectation(kappa: KappaLike) -> float:
    """State-independent saturation value F(kappa) = 2 dx dp / hbar.

    Equals the mean of the commutator deformation function over the
    state; F -> 1 in the classical limit.
    """
    k = as_kappa(kappa).value
    if k >= 2.0 / 3.0:
        raise DomainError(f"F(kappa) requires kappa < 2/3, got {k}")
    if k < TINY_KAPPA:
        return 1.0
    a = 0.5 / k
    log_ratio = (
        log_gamma(a - 0.75)
        + log_gamma(a + 1.25)
        - log_gamma(a + 1.75)
        - log_gamma(a - 0.25)
    )
    return (1.0 - k * k) / (2.0 * k) * math.exp(log_ratio)


# ---------------------------------------------------------------------------
# quadrature oracle
# ---------------------------------------------------------------------------

def _check_rel_tol(rel_tol: float):
    if not 1e-12 <= rel_tol <= 1e-3:
        raise DomainError(f"rel_tol must lie in [1e-12, 1e-3], got {rel_tol}")


def _check_integrable(kappa: KappaParameter, growth_degree: float):
    """Tail of weight * pdf ~ p^(growth - 2/k): integrable iff growth < 2/k - 1."""
    k = kappa.value
    if k < TINY_KAPPA:
        return
    if growth_degree >= 2.0 / k - 1.0:
        raise DivergentIntegralError(
            f"integral of p^{growth_degree} * pdf diverges for kappa={k} "
            f"(needs degree < 2/kappa - 1 = {2.0 / k - 1.0:.4g})"
        )


def _quad_checked(fn, a, b, rel_tol: float, what: str) -> float:
    res = quad(fn, a, b, epsabs=1e-290, epsrel=rel_tol, limit=300, full_output=1)
    value, abserr = res[0], res[1]
    if len(res) > 3 and abserr > 10.0 * rel_tol * abs(value) + 1e-280:
        raise RuntimeError(f"quadrature for {what} did not converge: {res[3]}")
    return value


def expectation_quadrature(
    spec: StateSpec,
    weight: Callable[[float], float],
    log_weight_at_logp: Callable[[float], float],
    growth_degree: float,
    rel_tol: float = 1e-10,
) -> float:
    """<weight(p)> over the state by split quadrature.

    ``weight`` must be even in p and polynomially bounded; it is
    evaluated directly on the core |p| <= 20/sqrt(zeta). The tails are
    integrated in w = ln p, and ``log_weight_at_logp(w)`` must return
    ln weight(e^w) without forming e^w when that would overflow.
    ``growth_degree`` is the tail growth exponent of the weight and
    gates the integrability precondition.
    """
    _check_rel_tol(rel_tol)
    _check_integrable(spec.kappa, growth_degree)
    half_width = _CORE_HALF_WIDTH / math.sqrt(spec.zeta)
    log_n2 = 2.0 * math.log(normalization_constant(spec))

    core = _quad_checked(
        lambda p: weight(p) * pdf(p, spec), 0.0, half_width, 0.5 * rel_tol, "core"
    )

    def tail_integrand(w: float) -> float:
        lp = _log_pdf_at_logp(w, spec, log_n2)
        total = log_weight_at_logp(w) + w + lp
        if total < -700.0:
            return 0.0
        return math.exp(total)

    tail = _quad_checked(
        tail_integrand, math.log(half_width), math.inf, 0.5 * rel_tol, "tail"
    )
    return 2.0 * (core + tail)


def quadrature_moment(power: int, spec: StateSpec, rel_tol: float = 1e-10) -> float:
    """Moment <p^power> by adaptive quadrature (even power only).

    Independent of the Gamma-function closed forms; raises
    DivergentIntegralError when the power-law tail makes the moment
    infinite (power >= 2/kappa - 1).
    """
    if power < 0 or power != int(power) or int(power) % 2 != 0:
        raise DomainError(f"power must be an even nonnegative integer, got {power}")
    power = int(power)
    return expectation_quadrature(
        spec,
        weight=lambda p: p**power if power else 1.0,
        log_weight_at_logp=lambda w: power * w,
        growth_degree=float(power),
        rel_tol=rel_tol,
    )


def f_expectation_quadrature(spec: StateSpec, rel_tol: float = 1e-10) -> float:
    """<f(p)> for the commutator deformation shape, quadrature route for F(kappa)."""
    k, z = spec.kappa.value, spec.zeta

    def log_f_at_logp(w: float) -> float:
        if k < TINY_KAPPA:
            return 0.0
        x_log = math.log(k * z) + 2.0 * w
        if x_log > 40.0:
            return math.log1p(k) + x_log
        x = math.exp(x_log)
        return math.log(math.hypot(1.0, x) + k * x)

    return expectation_quadrature(
        spec,
        weight=lambda p: _deformation_shape(p, k, z),
        log_weight_at_logp=log_f_at_logp,
        growth_degree=2.0,
        rel_tol=rel_tol,
    )


def tail_exponent_estimate(spec: StateSpec, n_points: int = 41) -> float:
    """Least-squares slope of ln pdf vs ln p over p in [1e2, 1e4]/sqrt(zeta).

    Converges to -2/kappa; only meaningful for kappa > 0.
    """
    k = spec.kappa.value
    if k < TINY_KAPPA:
        raise DomainError("tail exponent is defined only for kappa > 0")
    p = np.geomspace(1e2 / math.sqrt(spec.zeta), 1e4 / math.sqrt(spec.zeta), n_points)
    slope = np.polyfit(np.log(p), log_pdf(p, spec), 1)[0]
    return float(slope)


# ---------------------------------------------------------------------------
# combined report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MomentReport:
    """Closed-form and quadrature values for one state, plus their spread."""

    norm_constant: float
    second_moment: float
    delta_p: float
    delta_x: float
    f_expect: float
    norm_constant_quad: float
    second_moment_quad: float
    delta_p_quad: float
    delta_x_quad: float
    f_expect_quad: float
    max_rel_discrepancy: float

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if not (math.isfinite(value) and value >= 0.0):
                raise DomainError(f"MomentReport.{name} must be finite and >= 0")


def moment_report(spec: StateSpec, rel_tol: float = 1e-10) -> MomentReport:
    """Evaluate all closed forms and their quadrature counterparts."""
    spec.require_moment_safe()
    k = spec.kappa.value
    n_closed = normalization_constant(spec)
    p2_closed = second_moment(spec)
    dp_closed = math.sqrt(p2_closed)
    dx_closed = spec.hbar * spec.zeta * (1.0 - k * k) * dp_closed
    f_closed = f_expectation(spec.kappa)

    # quadrature of pdf integrates N^2 * exp_k(-zeta p^2); solving for the
    # normalization that would make it exactly 1 gives the independent N
    total = quadrature_moment(0, spec, rel_tol)
    n_quad = n_closed / math.sqrt(total)
    p2_quad = quadrature_moment(2, spec, rel_tol)
    dp_quad = math.sqrt(p2_quad)
    dx_quad = spec.hbar * spec.zeta * (1.0 - k * k) * dp_quad
    f_quad = f_expectation_quadrature(spec, rel_tol)

    pairs = [
        (n_closed, n_quad),
        (p2_closed, p2_quad),
        (dp_closed, dp_quad),
        (dx_closed, dx_quad),
        (f_closed, f_quad),
    ]
    disc = max(abs(c - q) / abs(c) for c, q in pairs)
    return MomentReport(
        norm_constant=n_closed,
        second_moment=p2_closed,
        delta_p=dp_closed,
        delta_x=dx_closed,
        f_expect=f_closed,
        norm_constant_quad=n_quad,
        second_moment_quad=p2_quad,
        delta_p_quad=dp_quad,
        delta_x_quad=dx_quad,
        f_expect_quad=f_quad,
        max_rel_discrepancy=disc,
    )
