"""Conversion from exchange-coupling units to laboratory units.

All solver modules work in units where the exchange constant is 1 (and
hbar = 1, so rates are energies).  Given the exchange constant in joules,
rates convert to Hz through J/hbar and fields to tesla through J/mu_B.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameterError
from .model import ModelParams
from .transfer import critical_field, critical_gamma

__all__ = ["HBAR_JS", "MU_B_J_PER_T", "UnitConversion", "convert_units"]

# Physical constants (SI), the single source of truth for conversions.
HBAR_JS = 1.054571817e-34
MU_B_J_PER_T = 9.2740100783e-24

DEFAULT_EXCHANGE_JOULES = 1e-22  # typical ferrimagnetic-insulator scale


@dataclass(frozen=True)
class UnitConversion:
    """Exchange constant in joules plus the derived conversion factors.

    With the default exchange constant the rate factor is ~0.95e12 Hz and
    the field factor ~10.8 T per exchange unit.
    """

    exchange_joules: float = DEFAULT_EXCHANGE_JOULES

    def __post_init__(self):
        if not (self.exchange_joules > 0):
            raise InvalidParameterError("exchange constant must be positive")

    @property
    def rate_to_hz(self) -> float:
        return self.exchange_joules / HBAR_JS

    @property
    def field_to_tesla(self) -> float:
        return self.exchange_joules / MU_B_J_PER_T


def convert_units(params: ModelParams, uc: UnitConversion | None = None) -> dict:
    """Physical-unit report for one parameter set.

    Returns gamma in Hz, h in tesla, the size-dependent crossover rate
    gamma*(N) = (1/N) in Hz, and the order-of-magnitude transition field
    |B*|(N) = exchange/(mu_B N) in tesla.  The reported |B*| follows the
    1/N unit-conversion estimate; the sharper edge location -5/N is
    available separately through ``critical_field``.
    """
    uc = uc or UnitConversion()
    return {
        "exchange_joules": uc.exchange_joules,
        "gamma_hz": params.gamma * uc.rate_to_hz,
        "h_tesla": params.h * uc.field_to_tesla,
        "gamma_star_hz": critical_gamma(params.N) * uc.rate_to_hz,
        "field_star_tesla": uc.field_to_tesla / params.N,
        "critical_field_tesla": critical_field(params.N) * uc.field_to_tesla,
    }
