"""At-scale savings, break-even and car-equivalent arithmetic.

Models deploying a per-unit monitoring device into a yearly product
stream: a fraction p of otherwise-wasted product is saved, each unit
carries an opaque whole-device manufacturing footprint, and results are
grounded as equivalent yearly passenger-car emissions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError

LB_TO_KG = 0.453592

# Yearly CO2e of a typical passenger vehicle (EPA figure), kg.
DEFAULT_CAR_EQUIV_KG_PER_YEAR = 4600.0

DEFAULT_EFFECTIVENESS_RATES = (1.0, 0.10, 0.01, 0.001)


@dataclass(frozen=True)
class ScaleScenario:
    name: str
    units_per_year: float  # product units entering the stream yearly
    co2e_per_unit_kg: float  # footprint of one wasted unit
    waste_fraction: float  # fraction of units wasted without intervention
    device_footprint_kg: float  # whole-device footprint per unit (chip+sensor+battery)
    car_equiv_kg_per_year: float = DEFAULT_CAR_EQUIV_KG_PER_YEAR

    def __post_init__(self):
        if min(
            self.units_per_year,
            self.co2e_per_unit_kg,
            self.device_footprint_kg,
            self.car_equiv_kg_per_year,
        ) <= 0:
            raise ConfigError(f"{self.name}: scale inputs must be positive")
        if not 0 < self.waste_fraction < 1:
            raise ConfigError(f"{self.name}: waste fraction must lie in (0, 1)")


def net_savings(p: float, s: ScaleScenario) -> float:
    """Yearly net kg CO2e saved at effectiveness p; negative means net harm."""
    if not 0 <= p <= 1:
        raise ConfigError("effectiveness must lie in [0, 1]")
    saved = p * s.waste_fraction * s.units_per_year * s.co2e_per_unit_kg
    spent = s.units_per_year * s.device_footprint_kg
    return saved - spent


def break_even(s: ScaleScenario) -> float:
    """Effectiveness where saved and spent carbon balance exactly.

    Independent of yearly volume. A value above 1 means the deployment
    never breaks even.
    """
    return s.device_footprint_kg / (s.waste_fraction * s.co2e_per_unit_kg)


def car_equivalent(kg: float, s: ScaleScenario) -> float:
    """Signed count of typical passenger cars emitting kg CO2e per year."""
    return kg / s.car_equiv_kg_per_year
