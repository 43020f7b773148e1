"""Effective-Planck-constant phenomenology and bounds on the deformation.

The saturated deformed uncertainty relation

    dx dp = (hbar/2) (1 + k^2 z dp^2)

is re-read as a Heisenberg relation with hbar_eff = hbar (1 + k^2 z dp^2).
Identifying dx with the Bohr radius a0 turns the rescaling into a shift
of the fine-structure constant,

    alpha_eff = alpha (1 + sqrt(1 - hbar^2 k^2 z / a0^2)) / 2
              ~ alpha (1 - hbar^2 k^2 z / (4 a0^2)),

and demanding the shift stay below the experimental resolution of
1/alpha = 137.035999206(11) bounds k sqrt(z), and, once the momentum
scale 1/sqrt(z) is fixed, k itself.

Units are MeV-based throughout: momenta in MeV/c, lengths in
(MeV/c)^-1 (natural units, hbar = c = 1 by default), with
hbar c = 197.3269804 MeV fm available for metric conversions. Values
may be passed as plain floats in those units or wrapped in Quantity
tags; a tag with the wrong unit raises UnitMismatchError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Union

from .errors import BelowMinimalLengthError, DomainError, UnitMismatchError
from .kappa_math import KappaLike, as_kappa

__all__ = [
    "Quantity",
    "UNIT_MOMENTUM",
    "UNIT_LENGTH",
    "UNIT_INV_MOMENTUM_SQ",
    "UNIT_SPEED",
    "PhenoConfig",
    "AlphaShift",
    "KappaBound",
    "PutraBound",
    "effective_hbar",
    "delta_p_saturated",
    "effective_alpha",
    "kappa_bound",
    "landau_zeta",
    "gac_match_zeta",
    "putra_bound",
]

UNIT_MOMENTUM = "MeV/c"
UNIT_LENGTH = "(MeV/c)^-1"
UNIT_INV_MOMENTUM_SQ = "(MeV/c)^-2"
UNIT_SPEED = "c"
UNIT_MASS = "MeV/c^2"

ZETA_FIXINGS = ("characteristic-momentum", "landau", "gac")


@dataclass(frozen=True)
class Quantity:
    """A value tagged with its unit string."""

    value: float
    unit: str


def _value_in(x: Union[float, Quantity], unit: str, name: str) -> float:
    if isinstance(x, Quantity):
        if x.unit != unit:
            raise UnitMismatchError(
                f"{name} expects unit {unit!r}, got {x.unit!r}"
            )
        return float(x.value)
    return float(x)


@dataclass(frozen=True)
class PhenoConfig:
    """Inputs of the fine-structure pipeline (defaults: electron / hydrogen).

    characteristic_momentum is 1/sqrt(zeta) in MeV/c; alpha_inverse
    carries its one-sigma uncertainty on the same scale (the "(11)" of
    137.035999206(11) is 1.1e-8). zeta_fixing selects the momentum
    scale used to convert the bound on kappa*sqrt(zeta) into a bound on
    kappa alone; only "characteristic-momentum" reproduces the headline
    number, the Compton-type fixings lock kappa*sqrt(zeta) by
    construction and are provided for comparison.
    """

    alpha_inverse: float = 137.035999206
    alpha_inverse_uncertainty: float = 1.1e-8
    characteristic_momentum: float = 3.7e-3   # MeV/c
    hbar: float = 1.0
    c: float = 1.0
    electron_mass: float = 0.511              # MeV/c^2
    hbar_c_mev_fm: float = 197.3269804
    zeta_fixing: str = "characteristic-momentum"

    def __post_init__(self):
        for f in fields(self):
            if f.name == "zeta_fixing":
                continue
            v = getattr(self, f.name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"PhenoConfig.{f.name} must be a positive number")
        if not 0.0 < 1.0 / self.alpha_inverse < 1.0:
            raise DomainError("alpha must lie in (0, 1)")
        if self.zeta_fixing not in ZETA_FIXINGS:
            raise DomainError(
                f"zeta_fixing must be one of {ZETA_FIXINGS}, got {self.zeta_fixing!r}"
            )

    @property
    def alpha(self) -> float:
        return 1.0 / self.alpha_inverse

    @property
    def delta_alpha_exp(self) -> float:
        """Propagated uncertainty on alpha itself."""
        return self.alpha_inverse_uncertainty / self.alpha_inverse**2

    @property
    def bohr_radius(self) -> float:
        """a0 = hbar / characteristic momentum, in hbar (MeV/c)^-1."""
        return self.hbar / self.characteristic_momentum

    def conversion_momentum(self) -> float:
        """Momentum scale (MeV/c) taken for 1/sqrt(zeta) by zeta_fixing."""
        if self.zeta_fixing == "characteristic-momentum":
            return self.characteristic_momentum
        mc = self.electron_mass * self.c
        if self.zeta_fixing == "landau":
            return mc
        return 2.0 * mc / math.sqrt(3.0)   # gac

    def to_json_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "PhenoConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise DomainError(f"unknown PhenoConfig keys: {sorted(unknown)}")
        return cls(**data)


@dataclass(frozen=True)
class AlphaShift:
    alpha_eff: float
    delta_alpha: float


@dataclass(frozen=True)
class KappaBound:
    bound_kappa_sqrt_zeta: float   # (MeV/c)^-1
    bound_kappa: float             # dimensionless


@dataclass(frozen=True)
class PutraBound:
    bound: float
    expansion_first_order: float


def effective_hbar(delta_p, kappa: KappaLike, zeta, hbar: float = 1.0) -> float:
    """hbar_eff = hbar (1 + kappa^2 zeta dp^2)."""
    dp = _value_in(delta_p, UNIT_MOMENTUM, "delta_p")
    z = _value_in(zeta, UNIT_INV_MOMENTUM_SQ, "zeta")
    k = as_kappa(kappa).value
    return hbar * (1.0 + k * k * z * dp * dp)


def delta_p_saturated(delta_x, kappa: KappaLike, zeta, hbar: float = 1.0) -> float:
    """Momentum uncertainty saturating the deformed relation at given dx.

    Root of (hbar k^2 z / 2) dp^2 - dx dp + hbar/2 = 0 on the Heisenberg
    branch, written as hbar / (dx + sqrt(dx^2 - hbar^2 k^2 z)) so the
    k -> 0 limit hbar/(2 dx) comes out without cancellation.
    """
    dx = _value_in(delta_x, UNIT_LENGTH, "delta_x")
    z = _value_in(zeta, UNIT_INV_MOMENTUM_SQ, "zeta")
    k = as_kappa(kappa).value
    dx_min = hbar * k * math.sqrt(z)
    if dx < dx_min:
        raise BelowMinimalLengthError(
            f"delta_x={dx} below minimal length {dx_min}"
        )
    disc = (dx - dx_min) * (dx + dx_min)
    return hbar / (dx + math.sqrt(disc))


def effective_alpha(a0, kappa: KappaLike, zeta, config: PhenoConfig) -> AlphaShift:
    """Effective fine-structure constant for position uncertainty a0.

    Exact form alpha (1 + sqrt(1 - r)) / 2 with r = hbar^2 k^2 z / a0^2,
    returned together with the (negative) shift delta_alpha computed
    cancellation-free; at leading order delta_alpha ~ -alpha r / 4.
    """
    a0_val = _value_in(a0, UNIT_LENGTH, "a0")
    z = _value_in(zeta, UNIT_INV_MOMENTUM_SQ, "zeta")
    k = as_kappa(kappa).value
    alpha = config.alpha
    r = (config.hbar * k / a0_val) ** 2 * z
    if r > 1.0:
        raise BelowMinimalLengthError(
            f"a0={a0_val} below minimal length hbar*kappa*sqrt(zeta)"
        )
    delta = -alpha * r / (2.0 * (1.0 + math.sqrt(1.0 - r)))
    return AlphaShift(alpha_eff=alpha + delta, delta_alpha=delta)


def kappa_bound(config: PhenoConfig) -> KappaBound:
    """Invert |delta_alpha| < delta_alpha_exp at leading order.

    |delta_alpha| ~ alpha hbar^2 (k sqrt(z))^2 / (4 a0^2) gives

        k sqrt(z) <= (2 a0 / hbar) sqrt(delta_alpha / alpha),

    then the configured momentum scale converts to a bound on kappa.
    """
    ratio = config.delta_alpha_exp / config.alpha
    bound_ksz = 2.0 * (config.bohr_radius / config.hbar) * math.sqrt(ratio)
    bound_k = bound_ksz * config.conversion_momentum()
    return KappaBound(bound_kappa_sqrt_zeta=bound_ksz, bound_kappa=bound_k)


def landau_zeta(kappa: KappaLike, m, c: float = 1.0) -> float:
    """zeta fixed so the minimal length equals the Compton wavelength:
    sqrt(zeta) = 1/(kappa m c)."""
    k = as_kappa(kappa).value
    if k <= 0.0:
        raise DomainError("landau_zeta requires kappa > 0")
    t = 1.0 / (k * _value_in(m, UNIT_MASS, "m") * c)
    return t * t


def gac_match_zeta(kappa: KappaLike, m, c: float = 1.0) -> float:
    """zeta = 3/(4 kappa^2 m^2 c^2), matching the dispersion-based
    squared relation 1 + (3/2) dp^2/(m c)^2 at leading order."""
    return 0.75 * landau_zeta(kappa, m, c)


def putra_bound(v_g, c: float = 1.0, hbar: float = 1.0) -> PutraBound:
    """Velocity-dependent bound (hbar/2) gamma^2(v_g) and its weakly
    relativistic expansion (hbar/2)(1 + v_g^2/c^2)."""
    v = _value_in(v_g, UNIT_SPEED, "v_g")
    if not abs(v) < c:
        raise DomainError(f"|v_g| must be below c, got {v}")
    beta_sq = (v / c) ** 2
    gamma_sq = 1.0 / ((1.0 - v / c) * (1.0 + v / c))
    return PutraBound(
        bound=0.5 * hbar * gamma_sq,
        expansion_first_order=0.5 * hbar * (1.0 + beta_sq),
    )
