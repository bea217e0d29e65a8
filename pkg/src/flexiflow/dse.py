"""Lifetime-aware design-space exploration.

Sweeps lifetime x frequency grids, selects the carbon-optimal core per
cell, computes analytic crossover execution counts, builds accuracy vs
carbon Pareto frontiers and runs energy-source / instruction-mix
sensitivity ablations. Grid cells are independent; all sweep math is
vectorized and deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .carbon import (
    KWH_PER_JOULE,
    CarbonReport,
    DeploymentScenario,
    EnergySource,
    FoundryConfig,
    embodied_carbon,
    total_carbon,
)
from .errors import ConfigError, InfeasibleScenarioError
from .iss.classes import InstrClass
from .ppa import CoreModel, MemoryModel, system_ppa
from .profile import WorkloadProfile

DEFAULT_POINTS_PER_DECADE = 20
# Default grid spans: one day to twenty years, one execution per day to one per second.
DEFAULT_LIFETIME_RANGE = (86_400.0, 20 * 365 * 86_400.0)
DEFAULT_FREQ_RANGE = (1.0 / 86_400.0, 1.0)

_DUTY_EPS = 1e-9

INFEASIBLE = "infeasible"


def log_grid(lo: float, hi: float, points_per_decade: int) -> np.ndarray:
    """Log-spaced grid from lo to hi inclusive with >= 2 points."""
    if lo <= 0 or hi <= 0 or hi <= lo:
        raise ConfigError("grid range must be positive with hi > lo")
    if points_per_decade <= 0:
        raise ConfigError("points per decade must be positive")
    decades = math.log10(hi / lo)
    n = max(2, int(round(decades * points_per_decade)) + 1)
    return np.geomspace(lo, hi, n)


def _sorted_by_area(cores) -> list[CoreModel]:
    if not cores:
        raise ConfigError("at least one core is required")
    return sorted(cores, key=lambda c: (c.area_mm2, c.name))


@dataclass(frozen=True)
class DecisionMap:
    """Per-cell carbon totals and argmin selection over a lifetime x frequency grid.

    optimal[i, j] indexes core_names (area-ascending order), or -1 where no
    core meets the duty-cycle constraint. Ties break toward the
    smaller-area core.
    """

    lifetimes_s: np.ndarray
    frequencies_hz: np.ndarray
    core_names: tuple[str, ...]
    totals_kg: np.ndarray  # (n_cores, n_lifetimes, n_frequencies)
    feasible: np.ndarray  # bool, same shape as totals_kg
    optimal: np.ndarray  # int, (n_lifetimes, n_frequencies)
    source_name: str = ""

    def optimal_name(self, i: int, j: int) -> str:
        idx = int(self.optimal[i, j])
        return INFEASIBLE if idx < 0 else self.core_names[idx]

    def to_json_obj(self) -> dict:
        cells = []
        for i in range(len(self.lifetimes_s)):
            row = []
            for j in range(len(self.frequencies_hz)):
                row.append(
                    {
                        "optimal": self.optimal_name(i, j),
                        "totals_kg": {
                            name: float(self.totals_kg[c, i, j])
                            for c, name in enumerate(self.core_names)
                        },
                        "feasible": {
                            name: bool(self.feasible[c, i, j])
                            for c, name in enumerate(self.core_names)
                        },
                    }
                )
            cells.append(row)
        return {
            "lifetimes_s": [float(x) for x in self.lifetimes_s],
            "frequencies_hz": [float(x) for x in self.frequencies_hz],
            "cores": list(self.core_names),
            "source": self.source_name,
            "cells": cells,
        }


@dataclass(frozen=True)
class AlgorithmVariant:
    """One software implementation evaluated at a fixed deployment scenario."""

    name: str
    profile: WorkloadProfile
    accuracy: float
    optimal_core: str
    total_kg: float
    reports: tuple[CarbonReport, ...] = field(default_factory=tuple)


def select_optimal(
    cores,
    profile: WorkloadProfile,
    scenario: DeploymentScenario,
    foundry: FoundryConfig,
    mem: MemoryModel,
) -> tuple[CoreModel, list[CarbonReport]]:
    """Pick the core minimizing total carbon; keep all reports for auditing.

    Cores whose runtime violates the duty-cycle constraint at the scenario
    frequency are excluded. Ties break toward the smaller-area core.
    """
    ordered = _sorted_by_area(cores)
    reports: list[CarbonReport] = []
    best: CoreModel | None = None
    best_total = math.inf
    for core in ordered:
        try:
            report = total_carbon(core, profile, scenario, foundry, mem)
        except InfeasibleScenarioError:
            continue
        reports.append(report)
        if report.total_kg < best_total:
            best = core
            best_total = report.total_kg
    if best is None:
        raise InfeasibleScenarioError(
            f"no core meets the duty-cycle constraint at {scenario.exec_per_s:.6g} exec/s"
        )
    return best, reports


def crossover_executions(
    core_a: CoreModel,
    core_b: CoreModel,
    profile: WorkloadProfile,
    source: EnergySource,
    foundry: FoundryConfig,
    mem: MemoryModel,
) -> float | None:
    """Execution count at which core_b's energy savings repay its extra embodied carbon.

    Expects core_b to carry higher embodied carbon and lower energy per
    execution than core_a; returns None when either delta is nonpositive,
    meaning one core dominates at every lifetime.
    """
    sys_a = system_ppa(core_a, profile, mem)
    sys_b = system_ppa(core_b, profile, mem)
    d_embodied = embodied_carbon(sys_b.total_area_mm2, foundry) - embodied_carbon(
        sys_a.total_area_mm2, foundry
    )
    d_energy_j = sys_a.energy_per_exec_j - sys_b.energy_per_exec_j
    if d_embodied <= 0 or d_energy_j <= 0:
        return None
    return d_embodied / (d_energy_j * KWH_PER_JOULE * source.intensity_kg_per_kwh)


def sweep(
    cores,
    profile: WorkloadProfile,
    lifetime_range: tuple[float, float] = DEFAULT_LIFETIME_RANGE,
    freq_range: tuple[float, float] = DEFAULT_FREQ_RANGE,
    points_per_decade: int = DEFAULT_POINTS_PER_DECADE,
    source: EnergySource | None = None,
    foundry: FoundryConfig | None = None,
    mem: MemoryModel | None = None,
) -> DecisionMap:
    """Evaluate the carbon-optimal core at every grid cell.

    Cells where a core's runtime exceeds the execution period mark that
    core infeasible; cells with no feasible core select nothing (-1).
    """
    if source is None or foundry is None or mem is None:
        raise ConfigError("sweep requires source, foundry and memory model")
    ordered = _sorted_by_area(cores)
    lifetimes = log_grid(*lifetime_range, points_per_decade)
    frequencies = log_grid(*freq_range, points_per_decade)

    n_cores = len(ordered)
    embodied = np.empty(n_cores)
    op_per_exec = np.empty(n_cores)
    runtime = np.empty(n_cores)
    for c, core in enumerate(ordered):
        system = system_ppa(core, profile, mem)
        embodied[c] = embodied_carbon(system.total_area_mm2, foundry)
        op_per_exec[c] = (
            system.energy_per_exec_j * KWH_PER_JOULE * source.intensity_kg_per_kwh
        )
        runtime[c] = system.runtime_s

    executions = np.outer(lifetimes, frequencies)  # (n_L, n_f)
    totals = embodied[:, None, None] + op_per_exec[:, None, None] * executions[None, :, :]
    feasible = (runtime[:, None] * frequencies[None, :] <= 1.0 + _DUTY_EPS)[
        :, None, :
    ] & np.ones((1, len(lifetimes), 1), dtype=bool)

    masked = np.where(feasible, totals, np.inf)
    optimal = np.argmin(masked, axis=0).astype(np.int64)  # first minimum = smallest area
    optimal[~feasible.any(axis=0)] = -1

    return DecisionMap(
        lifetimes_s=lifetimes,
        frequencies_hz=frequencies,
        core_names=tuple(c.name for c in ordered),
        totals_kg=totals,
        feasible=feasible,
        optimal=optimal,
        source_name=source.name,
    )


def pareto_frontier(variants) -> list[AlgorithmVariant]:
    """Variants not dominated in (higher accuracy, lower carbon), carbon-ascending.

    Duplicate names keep their first occurrence.
    """
    seen: dict[str, AlgorithmVariant] = {}
    for v in variants:
        seen.setdefault(v.name, v)
    pool = list(seen.values())
    frontier = [
        v
        for v in pool
        if not any(
            (u.accuracy >= v.accuracy and u.total_kg <= v.total_kg)
            and (u.accuracy > v.accuracy or u.total_kg < v.total_kg)
            for u in pool
        )
    ]
    return sorted(frontier, key=lambda v: (v.total_kg, -v.accuracy, v.name))


def evaluate_variants(
    profiles,
    cores,
    scenario: DeploymentScenario,
    foundry: FoundryConfig,
    mem: MemoryModel,
) -> list[AlgorithmVariant]:
    """Evaluate each profile at the scenario under its own carbon-optimal core."""
    variants = []
    for profile in profiles:
        if profile.accuracy is None:
            raise ConfigError(f"variant {profile.name} is missing an accuracy value")
        best, reports = select_optimal(cores, profile, scenario, foundry, mem)
        total = next(r.total_kg for r in reports if r.core_name == best.name)
        variants.append(
            AlgorithmVariant(
                name=profile.name,
                profile=profile,
                accuracy=profile.accuracy,
                optimal_core=best.name,
                total_kg=total,
                reports=tuple(reports),
            )
        )
    return variants


def sensitivity_energy(
    cores,
    profile: WorkloadProfile,
    sources,
    lifetime_range: tuple[float, float] = DEFAULT_LIFETIME_RANGE,
    freq_range: tuple[float, float] = DEFAULT_FREQ_RANGE,
    points_per_decade: int = DEFAULT_POINTS_PER_DECADE,
    foundry: FoundryConfig | None = None,
    mem: MemoryModel | None = None,
) -> dict[str, DecisionMap]:
    """One decision map per energy source, keyed by source name."""
    return {
        src.name: sweep(
            cores,
            profile,
            lifetime_range,
            freq_range,
            points_per_decade,
            source=src,
            foundry=foundry,
            mem=mem,
        )
        for src in sources
    }


def mix_extremes(profile: WorkloadProfile) -> tuple[WorkloadProfile, WorkloadProfile]:
    """Rebuild the profile at the all-one-stage and all-two-stage extremes.

    Both extremes keep the original total instruction count.
    """
    total = profile.total_instructions
    one = profile.with_counts({InstrClass.ARITH_LOGIC: total})
    two = profile.with_counts({InstrClass.LOAD: total})
    return one, two


def sensitivity_mix(
    cores,
    base_profile: WorkloadProfile,
    lifetime_range: tuple[float, float] = DEFAULT_LIFETIME_RANGE,
    freq_range: tuple[float, float] = DEFAULT_FREQ_RANGE,
    points_per_decade: int = DEFAULT_POINTS_PER_DECADE,
    source: EnergySource | None = None,
    foundry: FoundryConfig | None = None,
    mem: MemoryModel | None = None,
) -> tuple[DecisionMap, DecisionMap]:
    """Decision maps for the one-stage-only and two-stage-only instruction mixes."""
    one, two = mix_extremes(base_profile)
    kwargs = dict(
        lifetime_range=lifetime_range,
        freq_range=freq_range,
        points_per_decade=points_per_decade,
        source=source,
        foundry=foundry,
        mem=mem,
    )
    return sweep(cores, one, **kwargs), sweep(cores, two, **kwargs)
