"""Lifetime-aware carbon modeling for bit-serial RISC-V systems.

Simulates RV32E workloads on 1/4/8-bit datapath core models, combines
core and memory PPA into per-execution energy, accounts embodied and
operational carbon per deployment, and selects the carbon-optimal core
across lifetime x frequency grids.
"""

from .carbon import (
    CarbonReport,
    DeploymentScenario,
    EnergySource,
    FoundryConfig,
    embodied_carbon,
    energy_catalog,
    operational_carbon,
    total_carbon,
)
from .dse import (
    AlgorithmVariant,
    DecisionMap,
    crossover_executions,
    evaluate_variants,
    pareto_frontier,
    select_optimal,
    sensitivity_energy,
    sensitivity_mix,
    sweep,
)
from .errors import (
    AlignmentError,
    ConfigError,
    FlexiFlowError,
    InfeasibleScenarioError,
    LoadError,
    UndefinedRatioError,
)
from .iss import ExecutionTrace, InstrClass, Machine, load_program, profile_memory
from .ppa import CoreModel, MemoryModel, SystemPPA, default_cores, default_memory_model, memory_ppa, system_ppa
from .profile import WorkloadProfile
from .scale import ScaleScenario, break_even, car_equivalent, net_savings
from .timing import CycleReport, TimingParams, cycles_per_instruction, speedup, workload_cycles

__version__ = "0.1.0"
