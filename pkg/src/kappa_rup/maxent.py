"""Kaniadakis entropy and constrained maximization over discrete levels.

The entropy of a distribution {n_i} is

    S_k = - sum_i n_i ln_k(n_i),

maximized under sum n_i = 1 and sum n_i E_i = U. Stationarity of the
Lagrangian reads phi(n_i) = -lam0 - lam1 E_i with

    phi(n) = d/dn [n ln_k n] = ln_k(n) + cosh(k ln n),

which is strictly increasing on n > 0 (the entropy is strictly
concave), so each level is uniquely determined by the two multipliers.
Substituting z = n^k turns phi(n) = y into a quadratic, giving the
closed-form inverse

    n = [ (k y + sqrt(k^2 y^2 + 1 - k^2)) / (1 + k) ]^(1/k),

and the solver reduces to a damped Newton iteration on the two
multipliers alone. For k = 0 everything collapses to the Gibbs
exponential n = exp(y - 1).

The maximizer is proportional to the deformed Boltzmann factor
exp_k(-beta E_i) exactly at k = 0 and approximately for k > 0;
fit_kappa_exponential quantifies the discrepancy instead of asserting
it away.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError, InfeasibleMeanError, NonConvergenceError
from .kappa_math import TINY_KAPPA, KappaLike, KappaParameter, as_kappa, kappa_exp, kappa_log

__all__ = [
    "MaxEntProblem",
    "MaxEntSolution",
    "KappaExponentialFit",
    "kaniadakis_entropy",
    "maxent_solve",
    "fit_kappa_exponential",
]


@dataclass(frozen=True)
class MaxEntProblem:
    """Discrete energy levels, target mean energy, and the deformation."""

    energies: np.ndarray
    mean_energy: float
    kappa: KappaParameter

    def __post_init__(self):
        object.__setattr__(self, "kappa", as_kappa(self.kappa))
        e = np.asarray(self.energies, dtype=float)
        if e.ndim != 1 or e.size < 2:
            raise DomainError("need at least two energy levels")
        if not np.all(np.isfinite(e)):
            raise DomainError("energies must be finite")
        u = float(self.mean_energy)
        if not (e.min() < u < e.max()):
            raise InfeasibleMeanError(
                f"mean energy {u} must lie strictly inside ({e.min()}, {e.max()})"
            )
        e = e.copy()
        e.setflags(write=False)
        object.__setattr__(self, "energies", e)
        object.__setattr__(self, "mean_energy", u)

    def to_json_dict(self) -> dict:
        return {
            "energies": [float(v) for v in self.energies],
            "mean_energy": self.mean_energy,
            "kappa": self.kappa.value,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "MaxEntProblem":
        return cls(
            energies=np.asarray(data["energies"], dtype=float),
            mean_energy=float(data["mean_energy"]),
            kappa=as_kappa(data["kappa"]),
        )


@dataclass(frozen=True)
class MaxEntSolution:
    """Optimizing distribution with multipliers and diagnostics.

    beta is the energy multiplier read as the deformed inverse
    temperature; temperature applies 1/beta = sqrt(1 - kappa^2) T and
    is +-inf for a symmetric (beta = 0) problem.
    """

    distribution: np.ndarray
    multiplier_normalization: float
    multiplier_energy: float
    entropy: float
    kkt_residual: float
    kappa: KappaParameter
    beta: float
    temperature: float

    def to_json_dict(self) -> dict:
        return {
            "distribution": [float(v) for v in self.distribution],
            "multipliers": {
                "normalization": self.multiplier_normalization,
                "energy": self.multiplier_energy,
            },
            "entropy": self.entropy,
            "kkt_residual": self.kkt_residual,
            "derived": {
                "beta": self.beta,
                "temperature": self.temperature if math.isfinite(self.temperature) else None,
            },
        }


@dataclass(frozen=True)
class KappaExponentialFit:
    """Least-squares fit of the solution to A * exp_k(-b E)."""

    amplitude: float
    beta_fit: float
    max_residual: float


def kaniadakis_entropy(n, kappa: KappaLike) -> float:
    """S_k = -sum n_i ln_k(n_i); Shannon entropy at kappa = 0."""
    arr = np.asarray(n, dtype=float)
    if np.any(~(arr > 0.0)):
        raise DomainError("entropy requires strictly positive probabilities")
    total = float(arr.sum())
    if abs(total - 1.0) > 1e-9:
        raise DomainError(f"probabilities must sum to 1 within 1e-9, got {total}")
    return float(-np.sum(arr * kappa_log(arr, kappa)))


# ---------------------------------------------------------------------------
# stationarity function and its closed-form inverse
# ---------------------------------------------------------------------------

def _phi(n: np.ndarray, k: float) -> np.ndarray:
    """d/dn [n ln_k n], strictly increasing on n > 0."""
    t = np.log(n)
    if k < TINY_KAPPA:
        return t + 1.0
    return np.sinh(k * t) / k + np.cosh(k * t)


def _phi_prime(n: np.ndarray, k: float) -> np.ndarray:
    t = np.log(n)
    if k < TINY_KAPPA:
        return 1.0 / n
    return (np.cosh(k * t) + k * np.sinh(k * t)) / n


def _phi_inv(y: np.ndarray, k: float) -> np.ndarray:
    """Unique n > 0 with phi(n) = y (exponent clamped to keep n finite)."""
    y = np.asarray(y, dtype=float)
    if k < TINY_KAPPA:
        return np.exp(np.clip(y - 1.0, -700.0, 700.0))
    root = np.sqrt(k * k * y * y + 1.0 - k * k)
    # conjugate form for y < 0 avoids cancellation in k y + root
    num = np.where(y >= 0.0, k * y + root, (1.0 - k * k) / (root - k * y))
    log_n = (np.log(num) - math.log1p(k)) / k
    return np.exp(np.clip(log_n, -700.0, 700.0))


def maxent_solve(problem: MaxEntProblem, tol: float = 1e-10,
                 max_iter: int = 200) -> MaxEntSolution:
    """Maximize the Kaniadakis entropy under the two standard constraints.

    Damped Newton iteration on the multipliers (lam0, lam1); the level
    populations follow from the closed-form stationarity inverse, so
    positivity holds by construction. Energies are shifted by the mean
    internally for conditioning.
    """
    if not 1e-12 <= tol <= 1e-4:
        raise DomainError(f"tol must lie in [1e-12, 1e-4], got {tol}")
    k = problem.kappa.value
    u = problem.mean_energy
    e = problem.energies - u  # shifted: target mean is 0
    e_scale = max(abs(u), float(e.max() - e.min()), 1.0)
    target = min(tol, 1e-13)

    w = e.size
    lam0 = -float(_phi(np.full(1, 1.0 / w), k)[0])  # uniform start
    lam1 = 0.0

    def residuals(l0, l1):
        n = _phi_inv(-l0 - l1 * e, k)
        g0 = float(n.sum()) - 1.0
        g1 = float(n @ e)
        return n, g0, g1

    n, g0, g1 = residuals(lam0, lam1)
    err = max(abs(g0), abs(g1) / e_scale)
    converged = err <= target
    for _ in range(max_iter):
        if converged:
            break
        r = 1.0 / _phi_prime(n, k)
        s0, s1, s2 = float(r.sum()), float(r @ e), float(r @ (e * e))
        det = s0 * s2 - s1 * s1
        if det <= 0.0 or not math.isfinite(det):
            raise NonConvergenceError("singular Newton system in maxent_solve")
        d0 = (s2 * g0 - s1 * g1) / det
        d1 = (s0 * g1 - s1 * g0) / det
        step = 1.0
        for _ in range(40):
            n_new, g0_new, g1_new = residuals(lam0 + step * d0, lam1 + step * d1)
            err_new = max(abs(g0_new), abs(g1_new) / e_scale)
            if err_new < err or err_new <= target:
                break
            step *= 0.5
        lam0, lam1 = lam0 + step * d0, lam1 + step * d1
        n, g0, g1, err = n_new, g0_new, g1_new, err_new
        converged = err <= target
    if not converged:
        raise NonConvergenceError(
            f"maxent_solve did not reach {target} in {max_iter} iterations (err={err})"
        )

    # stationarity is closed-form exact; constraints carry the real error
    stat = np.max(np.abs(_phi(n, k) + lam0 + lam1 * e)) / max(
        1.0, abs(lam0) + abs(lam1) * e_scale
    )
    kkt = max(abs(g0), abs(g1) / e_scale, float(stat))
    lam0_unshifted = lam0 - lam1 * u
    beta = lam1
    if beta != 0.0:
        temperature = 1.0 / (beta * math.sqrt(1.0 - k * k))
    else:
        temperature = math.inf
    return MaxEntSolution(
        distribution=n,
        multiplier_normalization=lam0_unshifted,
        multiplier_energy=lam1,
        entropy=kaniadakis_entropy(n, problem.kappa),
        kkt_residual=kkt,
        kappa=problem.kappa,
        beta=beta,
        temperature=temperature,
    )


def fit_kappa_exponential(solution: MaxEntSolution,
                          energies: Sequence[float]) -> KappaExponentialFit:
    """Fit n_i ~ A exp_k(-b E_i) and report the worst relative residual.

    The amplitude is eliminated analytically for each trial b; b itself
    starts from the log-linear (Gibbs) estimate and is refined by
    bounded scalar minimization.
    """
    e = np.asarray(energies, dtype=float)
    n = np.asarray(solution.distribution, dtype=float)
    if e.shape != n.shape:
        raise DomainError("energies must match the solution distribution")
    k = solution.kappa

    slope = np.polyfit(e, np.log(n), 1)[0]
    b0 = -float(slope)

    def best_amplitude(b):
        u = kappa_exp(-b * e, k)
        return float(u @ n) / float(u @ u)

    def ssq(b):
        u = kappa_exp(-b * e, k)
        a = float(u @ n) / float(u @ u)
        return float(np.sum((a * u - n) ** 2))

    span = 10.0 * (abs(b0) + 1.0 / float(e.max() - e.min()))
    res = minimize_scalar(
        ssq,
        bounds=(b0 - span, b0 + span),
        method="bounded",
        options={"xatol": 1e-13 * (1.0 + abs(b0))},
    )
    # the bounded minimizer cannot localize b below ~sqrt(eps)|b|; when the
    # data is exactly exponential (kappa = 0) the regression estimate b0 is
    # already optimal, so keep whichever of the two scores better
    b = float(res.x) if ssq(float(res.x)) < ssq(b0) else b0
    a = best_amplitude(b)
    model = a * kappa_exp(-b * e, k)
    max_residual = float(np.max(np.abs(model - n) / n))
    return KappaExponentialFit(amplitude=a, beta_fit=b, max_residual=max_residual)
