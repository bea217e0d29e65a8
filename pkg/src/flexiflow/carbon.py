"""Operational and embodied carbon accounting.

Operational carbon charges the energy of every program execution over the
deployment lifetime at the energy source's carbon intensity; devices draw
zero power while idle. Embodied carbon is the one-time manufacturing
footprint, proportional to die area through per-wafer accounting.
Internal unit canon: W, s, J, kg; 1 kWh = 3.6e6 J.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError, InfeasibleScenarioError
from .ppa import CoreModel, MemoryModel, system_ppa
from .profile import WorkloadProfile

KWH_PER_JOULE = 1.0 / 3.6e6

# Duty-cycle slack for float comparison of exec_per_s * runtime_s against 1.
_DUTY_EPS = 1e-9


@dataclass(frozen=True)
class EnergySource:
    name: str
    intensity_g_per_kwh: float

    def __post_init__(self):
        if self.intensity_g_per_kwh <= 0:
            raise ConfigError(f"{self.name}: carbon intensity must be positive")

    @property
    def intensity_kg_per_kwh(self) -> float:
        return self.intensity_g_per_kwh / 1e3


@dataclass(frozen=True)
class FoundryConfig:
    kg_co2e_per_wafer: float
    active_wafer_area_mm2: float
    wafer_yield: float

    def __post_init__(self):
        if self.kg_co2e_per_wafer <= 0 or self.active_wafer_area_mm2 <= 0:
            raise ConfigError("wafer carbon and active area must be positive")
        if not 0 < self.wafer_yield <= 1:
            raise ConfigError("wafer yield must lie in (0, 1]")

    @classmethod
    def from_json_obj(cls, obj: dict) -> "FoundryConfig":
        try:
            return cls(
                kg_co2e_per_wafer=float(obj["kg_co2e_per_wafer"]),
                active_wafer_area_mm2=float(obj["active_wafer_area_mm2"]),
                wafer_yield=float(obj["wafer_yield"]),
            )
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"malformed foundry config: {exc}") from exc


@dataclass(frozen=True)
class DeploymentScenario:
    lifetime_s: float
    exec_per_s: float
    source: EnergySource

    def __post_init__(self):
        if self.lifetime_s <= 0:
            raise ConfigError("lifetime must be positive")
        if self.exec_per_s <= 0:
            raise ConfigError("execution frequency must be positive")

    @property
    def executions(self) -> float:
        return self.lifetime_s * self.exec_per_s


@dataclass(frozen=True)
class CarbonReport:
    core_name: str
    embodied_kg: float
    operational_kg: float

    @property
    def total_kg(self) -> float:
        return self.embodied_kg + self.operational_kg


# Shipped energy source catalog, g CO2e per kWh.
_CATALOG = (
    ("us_grid", 367.0),
    ("coal", 1048.0),
    ("petroleum", 1116.0),
    ("solar", 28.0),
    ("wind", 12.0),
)


def energy_catalog() -> tuple[EnergySource, ...]:
    """Built-in energy sources; custom intensities are accepted anywhere."""
    return tuple(EnergySource(name, g) for name, g in _CATALOG)


def operational_carbon(
    power_mw: float,
    runtime_s: float,
    exec_per_s: float,
    lifetime_s: float,
    source: EnergySource,
) -> float:
    """kg CO2e from powering all executions over the deployment lifetime."""
    if min(power_mw, runtime_s, exec_per_s, lifetime_s) < 0:
        raise ConfigError("operational carbon inputs must be nonnegative")
    duty = exec_per_s * runtime_s
    if duty > 1.0 + _DUTY_EPS:
        raise InfeasibleScenarioError(
            f"duty cycle {duty:.3f} exceeds 1: runtime {runtime_s:.6g} s "
            f"at {exec_per_s:.6g} executions/s"
        )
    energy_j = power_mw / 1e3 * runtime_s * exec_per_s * lifetime_s
    return energy_j * KWH_PER_JOULE * source.intensity_kg_per_kwh


def embodied_carbon(die_area_mm2: float, foundry: FoundryConfig) -> float:
    """One-time manufacturing kg CO2e for a die of the given area."""
    if die_area_mm2 < 0:
        raise ConfigError("die area must be nonnegative")
    if die_area_mm2 > foundry.active_wafer_area_mm2:
        raise ConfigError(
            f"die area {die_area_mm2:.6g} mm2 exceeds active wafer area "
            f"{foundry.active_wafer_area_mm2:.6g} mm2"
        )
    return (
        die_area_mm2
        / (foundry.active_wafer_area_mm2 * foundry.wafer_yield)
        * foundry.kg_co2e_per_wafer
    )


def total_carbon(
    core: CoreModel,
    profile: WorkloadProfile,
    scenario: DeploymentScenario,
    foundry: FoundryConfig,
    mem: MemoryModel,
) -> CarbonReport:
    """Embodied plus operational carbon of one device over its deployment."""
    system = system_ppa(core, profile, mem)
    embodied = embodied_carbon(system.total_area_mm2, foundry)
    operational = operational_carbon(
        system.total_power_mw,
        system.runtime_s,
        scenario.exec_per_s,
        scenario.lifetime_s,
        scenario.source,
    )
    return CarbonReport(core_name=core.name, embodied_kg=embodied, operational_kg=operational)
