"""Deformed Heisenberg algebra [x, p] = i hbar f(p) and its verification.

The physically selected deformation is

    f(p) = sqrt(1 + k^2 z^2 p^4) + k^2 z p^2          (>= 1, even),

the particular member of the general family

    f(p) = dx (sqrt(1 + k^2 z^2 p^4) + k^2 z p^2) / (hbar z (1-k^2) dp)
           + c1 * exp_k(+z p^2)

picked out by requiring f -> 1 both for k -> 0 (c1 = 0) and for p -> 0
(dx = hbar z (1-k^2) dp).

In momentum space the position operator for ordering parameter A is

    x = i hbar [ f(p) d/dp + A f'(p) ],    A in [0, 1],

with A = 1/2 the symmetric choice (unit integration measure). Grid
versions of x use 4th-order finite differences (one-sided at the
edges), and three residuals quantify how well the continuum identities
survive discretization:

  * annihilation_residual: (x/dx + i p/dp) psi = 0 on the
    minimum-uncertainty state;
  * commutator_residual: [x, p] psi = i hbar f psi on any smooth state;
  * ode_residual: the second-order ODE satisfied by the family above,
    evaluated pointwise with analytic f', f''.

All derivative formulas used below (s = sqrt(1 + k^2 z^2 p^4),
X = exp_k(z p^2)):

    f_core'  = 2 k^2 z p (1 + z p^2 / s)
    f_core'' = 2 k^2 z + 6 k^2 z^2 p^2 / s - 4 k^4 z^4 p^6 / s^3
    X'       = 2 z p X / s
    X''      = (2 z X / s^3) (s^2 + 2 z p^2 s - 2 k^2 z^2 p^4)

and are unit-tested against central differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .coherent_states import StateSpec, _deformation_shape
from .coherent_states import delta_p as state_delta_p
from .coherent_states import delta_x as state_delta_x
from .coherent_states import psi as state_psi
from .errors import DomainError, GridTooSmallError
from .kappa_math import KappaLike, as_kappa, kappa_exp

__all__ = [
    "OrderingParameter",
    "ORDER_X1",
    "ORDER_X2",
    "ORDER_X3",
    "GridFunction",
    "deformation_f",
    "deformation_f_derivatives",
    "deformation_general",
    "robertson_bound",
    "minimal_length",
    "approx_commutator_factor",
    "ordering_weight",
    "convert_ordering",
    "apply_position_operator",
    "annihilation_residual",
    "commutator_residual",
    "ode_residual",
]


@dataclass(frozen=True)
class OrderingParameter:
    """Operator-ordering label A in [0, 1]; 0, 1/2, 1 give x1, x3, x2."""

    A: float

    def __post_init__(self):
        a = float(self.A)
        if not (math.isfinite(a) and 0.0 <= a <= 1.0):
            raise DomainError(f"ordering parameter must lie in [0, 1], got {self.A!r}")
        object.__setattr__(self, "A", a)


ORDER_X1 = OrderingParameter(0.0)
ORDER_X3 = OrderingParameter(0.5)
ORDER_X2 = OrderingParameter(1.0)

OrderingLike = Union[OrderingParameter, float, int]


def _ordering_value(A: OrderingLike) -> float:
    if isinstance(A, OrderingParameter):
        return A.A
    return OrderingParameter(float(A)).A


@dataclass(frozen=True)
class GridFunction:
    """Complex samples on a uniform momentum grid."""

    p_min: float
    p_max: float
    samples: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=complex)
        if arr.ndim != 1 or arr.size < 16:
            raise DomainError("GridFunction needs a 1-d array of >= 16 samples")
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise DomainError("GridFunction samples must be finite")
        if not self.p_max > self.p_min:
            raise DomainError("GridFunction needs p_max > p_min")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @property
    def n_points(self) -> int:
        return self.samples.size

    @property
    def h(self) -> float:
        return (self.p_max - self.p_min) / (self.n_points - 1)

    def p_values(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.n_points)


# ---------------------------------------------------------------------------
# deformation function and friends
# ---------------------------------------------------------------------------

def deformation_f(p, kappa: KappaLike, zeta: float):
    """Commutator deformation f(p) = sqrt(1 + k^2 z^2 p^4) + k^2 z p^2."""
    k = as_kappa(kappa).value
    arr = np.asarray(p, dtype=float)
    scalar = arr.ndim == 0
    out = _deformation_shape(arr, k, zeta)
    return float(out) if scalar else out


def deformation_f_derivatives(p, kappa: KappaLike, zeta: float):
    """(f, f', f'') of the selected deformation, analytic forms."""
    k = as_kappa(kappa).value
    z = zeta
    arr = np.asarray(p, dtype=float)
    scalar = arr.ndim == 0
    x = k * z * np.square(arr)        # k z p^2
    s = np.hypot(1.0, x)
    f = s + k * x
    f1 = 2.0 * k * k * z * arr * (1.0 + z * np.square(arr) / s)
    f2 = (
        2.0 * k * k * z
        + 6.0 * (k * z) ** 2 * np.square(arr) / s
        - 4.0 * (k * z) ** 4 * arr**6 / s**3
    )
    if scalar:
        return float(f), float(f1), float(f2)
    return f, f1, f2


def _general_f_derivatives(p, k: float, z: float, dx: float, dp: float,
                           hbar: float, c1: float):
    """(f, f', f'') for the general two-parameter solution family."""
    arr = np.asarray(p, dtype=float)
    c0 = dx / (hbar * z * (1.0 - k * k) * dp)
    f, f1, f2 = deformation_f_derivatives(arr, k, z)
    f, f1, f2 = c0 * f, c0 * f1, c0 * f2
    if c1 != 0.0:
        x = k * z * np.square(arr)
        s = np.hypot(1.0, x)
        big_x = kappa_exp(z * np.square(arr), k)
        f = f + c1 * big_x
        f1 = f1 + c1 * 2.0 * z * arr * big_x / s
        f2 = f2 + c1 * (2.0 * z * big_x / s**3) * (
            s * s + 2.0 * z * np.square(arr) * s - 2.0 * (k * z) ** 2 * arr**4
        )
    return f, f1, f2


def deformation_general(p, kappa: KappaLike, zeta: float, dx: float, dp: float,
                        hbar: float = 1.0, c1: float = 0.0):
    """General solution family for f(p); reduces to deformation_f when
    c1 = 0 and dx = hbar zeta (1 - kappa^2) dp."""
    if not dp > 0.0:
        raise DomainError("deformation_general requires dp > 0")
    k = as_kappa(kappa).value
    arr = np.asarray(p, dtype=float)
    scalar = arr.ndim == 0
    f, _, _ = _general_f_derivatives(arr, k, zeta, dx, dp, hbar, c1)
    return float(f) if scalar else f


def robertson_bound(f_mean: float, hbar: float = 1.0) -> float:
    """Uncertainty bound (hbar/2) <f(p)> from the Robertson inequality.

    Rejects <f> < 1, which no state attains for the deformation above
    (a rounding-level dip below 1 is tolerated).
    """
    if f_mean < 1.0 - 1e-12:
        raise DomainError(f"mean deformation must be >= 1, got {f_mean}")
    return 0.5 * hbar * f_mean


def minimal_length(kappa: KappaLike, zeta: float, hbar: float = 1.0) -> float:
    """Minimal position uncertainty hbar kappa sqrt(zeta)."""
    return hbar * as_kappa(kappa).value * math.sqrt(zeta)


def approx_commutator_factor(p, kappa: KappaLike, zeta: float):
    """Leading-order commutator factor 1 + k^2 z p^2 (valid for z p^2 << 1)."""
    k = as_kappa(kappa).value
    arr = np.asarray(p, dtype=float)
    scalar = arr.ndim == 0
    out = 1.0 + k * k * zeta * np.square(arr)
    return float(out) if scalar else out


def ordering_weight(p, A: OrderingLike, kappa: KappaLike, zeta: float):
    """Momentum-space measure weight g(p) = f(p)^(2A-1) that makes the
    A-ordered position operator symmetric; g(0) = 1 for every A."""
    a = _ordering_value(A)
    f = deformation_f(p, kappa, zeta)
    return f ** (2.0 * a - 1.0)


def convert_ordering(phi: GridFunction, A_from: OrderingLike, A_to: OrderingLike,
                     kappa: KappaLike, zeta: float) -> GridFunction:
    """Rescale a wavefunction between ordering conventions:
    phi_to = f^(A_from - A_to) phi_from, pointwise on the same grid."""
    a_from = _ordering_value(A_from)
    a_to = _ordering_value(A_to)
    if a_from == a_to:
        return phi
    f = deformation_f(phi.p_values(), kappa, zeta)
    return GridFunction(phi.p_min, phi.p_max, phi.samples * f ** (a_from - a_to))


# ---------------------------------------------------------------------------
# finite-difference position operator
# ---------------------------------------------------------------------------

def _derivative_4th(samples: np.ndarray, h: float) -> np.ndarray:
    """First derivative, 4th order: central interior, one-sided edges."""
    s = samples
    d = np.empty_like(s)
    d[2:-2] = (s[:-4] - 8.0 * s[1:-3] + 8.0 * s[3:-1] - s[4:]) / (12.0 * h)
    d[0] = (-25.0 * s[0] + 48.0 * s[1] - 36.0 * s[2] + 16.0 * s[3] - 3.0 * s[4]) / (12.0 * h)
    d[1] = (-3.0 * s[0] - 10.0 * s[1] + 18.0 * s[2] - 6.0 * s[3] + s[4]) / (12.0 * h)
    d[-2] = (3.0 * s[-1] + 10.0 * s[-2] - 18.0 * s[-3] + 6.0 * s[-4] - s[-5]) / (12.0 * h)
    d[-1] = (25.0 * s[-1] - 48.0 * s[-2] + 36.0 * s[-3] - 16.0 * s[-4] + 3.0 * s[-5]) / (12.0 * h)
    return d


def apply_position_operator(psi_grid: GridFunction, A: OrderingLike,
                            kappa: KappaLike, zeta: float,
                            hbar: float = 1.0) -> GridFunction:
    """x psi = i hbar [f psi' + A f' psi] sampled on the grid."""
    if psi_grid.n_points < 5:
        raise GridTooSmallError("position operator needs at least 5 grid points")
    a = _ordering_value(A)
    p = psi_grid.p_values()
    f, f1, _ = deformation_f_derivatives(p, kappa, zeta)
    dpsi = _derivative_4th(psi_grid.samples, psi_grid.h)
    out = 1j * hbar * (f * dpsi + a * f1 * psi_grid.samples)
    return GridFunction(psi_grid.p_min, psi_grid.p_max, out)


def _l2_norm(samples: np.ndarray, h: float) -> float:
    return math.sqrt(float(np.sum(np.abs(samples) ** 2)) * h)


def annihilation_residual(spec: StateSpec, p_min: float, p_max: float,
                          n_points: int, delta_p_factor: float = 1.0) -> float:
    """|| (x/dx + i p/dp) psi || / ||psi|| on the sampled state.

    x is applied with the symmetric ordering and the closed-form dx, dp.
    Converges to 0 at the stencil order for the true state;
    ``delta_p_factor`` != 1 is the wrong-state control and leaves an
    O(1) floor.
    """
    bound = 8.0 / math.sqrt(spec.zeta)
    if p_min > -bound or p_max < bound:
        raise DomainError(
            f"grid must cover [-8, 8]/sqrt(zeta) = [-{bound:.3g}, {bound:.3g}]"
        )
    dx = state_delta_x(spec)
    dp = state_delta_p(spec) * delta_p_factor
    p = np.linspace(p_min, p_max, n_points)
    grid = GridFunction(p_min, p_max, state_psi(p, spec).astype(complex))
    x_psi = apply_position_operator(grid, ORDER_X3, spec.kappa, spec.zeta, spec.hbar)
    residual = x_psi.samples / dx + 1j * p * grid.samples / dp
    return _l2_norm(residual, grid.h) / _l2_norm(grid.samples, grid.h)


def commutator_residual(psi_grid: GridFunction, kappa: KappaLike, zeta: float,
                        hbar: float = 1.0) -> float:
    """|| [x, p] psi - i hbar f psi || / || hbar f psi || on any smooth state.

    The commutator is an operator identity, so this converges to 0 at
    the stencil order independently of the state.
    """
    p = psi_grid.p_values()
    f = deformation_f(p, kappa, zeta)
    p_psi = GridFunction(psi_grid.p_min, psi_grid.p_max, p * psi_grid.samples)
    x_p_psi = apply_position_operator(p_psi, ORDER_X3, kappa, zeta, hbar)
    x_psi = apply_position_operator(psi_grid, ORDER_X3, kappa, zeta, hbar)
    commutator = x_p_psi.samples - p * x_psi.samples
    target = 1j * hbar * f * psi_grid.samples
    return _l2_norm(commutator - target, psi_grid.h) / _l2_norm(target, psi_grid.h)


# ---------------------------------------------------------------------------
# minimum-uncertainty ODE residual
# ---------------------------------------------------------------------------

def ode_residual(p, kappa: KappaLike, zeta: float, dx: float, dp: float,
                 hbar: float = 1.0, c1: float = 0.0,
                 f_parts: Optional[Tuple] = None):
    """Normalized residual of the minimum-uncertainty ODE at momentum p.

    By default f, f', f'' come from the general solution family with
    the given (dx, dp, c1), for which the residual vanishes to rounding.
    ``f_parts`` = (f, f', f'') arrays substitute an arbitrary trial
    function (e.g. f = 1) to show the equation rejects it. The raw
    left-hand side spans many orders of magnitude in p, so it is
    divided by the largest of its three additive terms.
    """
    k = as_kappa(kappa).value
    z = zeta
    arr = np.asarray(p, dtype=float)
    scalar = arr.ndim == 0
    if f_parts is None:
        f, f1, f2 = _general_f_derivatives(arr, k, z, dx, dp, hbar, c1)
    else:
        f, f1, f2 = (np.asarray(part, dtype=float) for part in f_parts)
    s = np.hypot(1.0, k * z * np.square(arr))
    t1 = 4.0 * hbar**2 * z * (1.0 - np.square(arr) * z * (k * k * np.square(arr) * z + s)) * dp**2 * f**2
    t2 = s**3 * (4.0 * np.square(arr) * dx**2 - hbar**2 * dp**2 * f1**2)
    t3 = 2.0 * hbar * s**2 * dp * f * (
        4.0 * hbar * arr * z * dp * f1 - s * (2.0 * dx + hbar * dp * f2)
    )
    scale = np.maximum(np.abs(t1), np.maximum(np.abs(t2), np.abs(t3)))
    out = (t1 + t2 + t3) / scale
    return float(out) if scalar else out
