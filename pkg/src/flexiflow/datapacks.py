"""Shipped data packs and configuration loading.

The package bundles reference data under flexiflow/data: core models,
memory model, energy sources, an illustrative foundry sample, workload
profiles, algorithm variants and an at-scale product scenario. The
FLEXIFLOW_DATA environment variable points at an alternative directory
with the same layout.
"""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

from .carbon import DeploymentScenario, EnergySource, FoundryConfig
from .errors import ConfigError
from .ppa import CoreModel, MemoryModel, MemoryRow
from .profile import WorkloadProfile
from .scale import DEFAULT_CAR_EQUIV_KG_PER_YEAR, LB_TO_KG, ScaleScenario


def data_dir() -> Path:
    override = os.environ.get("FLEXIFLOW_DATA")
    if override:
        path = Path(override)
        if not path.is_dir():
            raise ConfigError(f"FLEXIFLOW_DATA does not name a directory: {override}")
        return path
    return Path(resources.files("flexiflow")) / "data"


def _read_json(path: Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"missing input file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc


def load_cores(path: Path | None = None) -> tuple[CoreModel, ...]:
    path = path or data_dir() / "cores.json"
    obj = _read_json(Path(path))
    cores = tuple(CoreModel.from_json_obj(c) for c in obj.get("cores", []))
    if not cores:
        raise ConfigError(f"no cores defined in {path}")
    return cores


def load_memory_model(path: Path | None = None) -> MemoryModel:
    path = path or data_dir() / "memory.json"
    obj = _read_json(Path(path))
    try:
        exact = {
            name: MemoryRow(
                nvm_kb=float(row["nvm_kb"]),
                vm_kb=float(row["vm_kb"]),
                lprom_mm2=float(row["lprom_mm2"]),
                sram_mm2=float(row["sram_mm2"]),
                total_mm2=float(row["total_mm2"]),
                total_mw=float(row["total_mw"]),
            )
            for name, row in obj.get("exact_table", {}).items()
        }
        return MemoryModel(
            lprom_mm2_per_kb=float(obj["lprom_mm2_per_kb"]),
            sram_mm2_per_kb=float(obj["sram_mm2_per_kb"]),
            sram_base_mm2=float(obj["sram_base_mm2"]),
            sram_mw_per_kb=float(obj["sram_mw_per_kb"]),
            sram_base_mw=float(obj["sram_base_mw"]),
            lprom_mw_per_kb=float(obj.get("lprom_mw_per_kb", 0.0)),
            exact_table=exact,
        )
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"malformed memory model in {path}: {exc}") from exc


def load_energy_sources(path: Path | None = None) -> dict[str, EnergySource]:
    path = path or data_dir() / "energy.json"
    obj = _read_json(Path(path))
    try:
        return {
            name: EnergySource(name=name, intensity_g_per_kwh=float(g))
            for name, g in obj["sources"].items()
        }
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"malformed energy catalog in {path}: {exc}") from exc


def resolve_energy_source(selector, catalog: dict[str, EnergySource] | None = None) -> EnergySource:
    """Accept a catalog name, an inline {name, intensity_g_per_kwh} object, or a number."""
    if isinstance(selector, EnergySource):
        return selector
    if isinstance(selector, dict):
        try:
            return EnergySource(
                name=selector.get("name", "custom"),
                intensity_g_per_kwh=float(selector["intensity_g_per_kwh"]),
            )
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"malformed inline energy source: {selector}") from exc
    if isinstance(selector, (int, float)):
        return EnergySource(name="custom", intensity_g_per_kwh=float(selector))
    catalog = catalog if catalog is not None else load_energy_sources()
    try:
        return catalog[str(selector)]
    except KeyError as exc:
        raise ConfigError(
            f"unknown energy source {selector!r}; known: {', '.join(sorted(catalog))}"
        ) from exc


def load_foundry(path: Path | None = None) -> FoundryConfig:
    path = path or data_dir() / "foundry.sample.json"
    return FoundryConfig.from_json_obj(_read_json(Path(path)))


def load_profile(name_or_path: str | Path) -> WorkloadProfile:
    """Load a workload profile by file path or by shipped workload name."""
    path = Path(name_or_path)
    if not path.is_file():
        slug = str(name_or_path).lower().replace(" ", "_")
        candidate = data_dir() / "flexibench" / f"{slug}.json"
        if candidate.is_file():
            path = candidate
        else:
            raise ConfigError(f"no such workload profile: {name_or_path}")
    return WorkloadProfile.from_json_obj(_read_json(path))


def list_workloads() -> list[str]:
    bench = data_dir() / "flexibench"
    if not bench.is_dir():
        return []
    return sorted(p.stem for p in bench.glob("*.json"))


def load_scenario(path: Path, catalog: dict[str, EnergySource] | None = None) -> DeploymentScenario:
    obj = _read_json(Path(path))
    try:
        return DeploymentScenario(
            lifetime_s=float(obj["lifetime_s"]),
            exec_per_s=float(obj["exec_per_s"]),
            source=resolve_energy_source(obj["source"], catalog),
        )
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"malformed scenario in {path}: {exc}") from exc


def load_variants(path: Path) -> list[WorkloadProfile]:
    obj = _read_json(Path(path))
    try:
        return [WorkloadProfile.from_json_obj(v) for v in obj["variants"]]
    except KeyError as exc:
        raise ConfigError(f"variant file {path} lacks a 'variants' array") from exc


def load_scale_scenarios(path: Path | None = None) -> list[ScaleScenario]:
    """One ScaleScenario per system configuration listed in the scenario file."""
    path = path or data_dir() / "scale" / "beef.json"
    obj = _read_json(Path(path))
    try:
        if "units_per_year" in obj:
            units = float(obj["units_per_year"])
        else:
            units = float(obj["units_per_year_lb"]) * LB_TO_KG
        shared = dict(
            units_per_year=units,
            co2e_per_unit_kg=float(obj["co2e_per_unit_kg"]),
            waste_fraction=float(obj["waste_fraction"]),
            car_equiv_kg_per_year=float(
                obj.get("car_equiv_kg_per_year", DEFAULT_CAR_EQUIV_KG_PER_YEAR)
            ),
        )
        return [
            ScaleScenario(
                name=system["name"],
                device_footprint_kg=float(system["device_footprint_kg"]),
                **shared,
            )
            for system in obj["systems"]
        ]
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"malformed scale scenario in {path}: {exc}") from exc


def load_manifest(path: Path) -> dict:
    """Manifest for a flat binary: base, entry, sp_init, globals_bytes, mem_size."""
    obj = _read_json(Path(path))
    try:
        return {
            "base": int(obj.get("base", 0)),
            "entry": int(obj.get("entry", 0)),
            "sp_init": int(obj.get("sp_init", 0)),
            "globals_bytes": int(obj.get("globals_bytes", 0)),
            "mem_size": int(obj.get("mem_size", 1 << 20)),
        }
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"malformed manifest in {path}: {exc}") from exc
