"""Cycle model for bit-serial cores with 1/4/8-bit datapaths.

A W-bit datapath processes a 32-bit word in 32/W cycles. One-stage
instructions make a single pass through the datapath; two-stage
instructions (load, store, branch, jump, shift, set-less-than) make two.
Fixed per-instruction fetch overheads are added on top and are
user-configurable for recalibration against measured hardware.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError, UndefinedRatioError
from .iss.classes import CLASS_ORDER, InstrClass
from .profile import WorkloadProfile

WORD_BITS = 32
SUPPORTED_WIDTHS = (1, 4, 8)


@dataclass(frozen=True)
class TimingParams:
    one_stage_overhead: int = 3
    two_stage_overhead: int = 6
    clock_hz: float = 10_000.0

    def __post_init__(self):
        if self.one_stage_overhead < 0 or self.two_stage_overhead < 0:
            raise ConfigError("fetch overheads must be nonnegative")
        if self.clock_hz <= 0:
            raise ConfigError("clock frequency must be positive")

    def to_json_obj(self) -> dict:
        return {
            "one_stage_overhead": self.one_stage_overhead,
            "two_stage_overhead": self.two_stage_overhead,
            "clock_hz": self.clock_hz,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "TimingParams":
        return cls(
            one_stage_overhead=int(obj.get("one_stage_overhead", 3)),
            two_stage_overhead=int(obj.get("two_stage_overhead", 6)),
            clock_hz=float(obj.get("clock_hz", 10_000.0)),
        )


DEFAULT_TIMING = TimingParams()


@dataclass(frozen=True)
class CycleReport:
    total_cycles: int
    runtime_s: float
    per_class_cycles: dict[InstrClass, int]


def cycles_per_instruction(
    instr_class: InstrClass, width: int, params: TimingParams = DEFAULT_TIMING
) -> int:
    """Cycle cost of one instruction of the given class on a W-bit datapath."""
    if width not in SUPPORTED_WIDTHS:
        raise ConfigError(f"unsupported datapath width {width}; expected one of {SUPPORTED_WIDTHS}")
    serial = WORD_BITS // width
    stage = instr_class.stage
    if stage == "one_stage":
        return serial + params.one_stage_overhead
    if stage == "two_stage":
        return 2 * serial + params.two_stage_overhead
    return 0  # system instructions halt and contribute no cycles


def workload_cycles(
    profile: WorkloadProfile, width: int, params: TimingParams = DEFAULT_TIMING
) -> CycleReport:
    """Total cycles and runtime for one execution of the profiled workload."""
    per_class = {}
    total = 0
    for cls in CLASS_ORDER:
        cycles = profile.count(cls) * cycles_per_instruction(cls, width, params)
        per_class[cls] = cycles
        total += cycles
    return CycleReport(
        total_cycles=total,
        runtime_s=total / params.clock_hz,
        per_class_cycles=per_class,
    )


def speedup(
    profile: WorkloadProfile,
    width_a: int,
    width_b: int,
    params: TimingParams = DEFAULT_TIMING,
) -> float:
    """Cycle-count ratio cycles(width_a) / cycles(width_b) for the profile."""
    cycles_a = workload_cycles(profile, width_a, params).total_cycles
    cycles_b = workload_cycles(profile, width_b, params).total_cycles
    if cycles_b == 0:
        raise UndefinedRatioError("speedup undefined: reference width executes zero cycles")
    return cycles_a / cycles_b
