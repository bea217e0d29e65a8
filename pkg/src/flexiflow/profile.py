"""Workload profiles: per-execution instruction mix plus memory footprint.

This is the canonical on-disk form consumed by the sweep and Pareto
tooling. Counts are dynamic instruction counts for one program execution.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import ConfigError
from .iss.classes import CLASS_ORDER, InstrClass
from .iss.machine import ExecutionTrace


@dataclass(frozen=True)
class WorkloadProfile:
    name: str
    class_counts: dict[InstrClass, int] = field(default_factory=dict)
    nvm_kb: float = 0.0
    vm_kb: float = 0.0
    default_lifetime_s: float | None = None
    default_exec_per_s: float | None = None
    accuracy: float | None = None
    notes: str = ""
    provenance: str | None = None

    def __post_init__(self):
        for cls, count in self.class_counts.items():
            if count < 0:
                raise ConfigError(f"{self.name}: negative count for {cls.value}")
        if self.nvm_kb < 0 or self.vm_kb < 0:
            raise ConfigError(f"{self.name}: memory sizes must be nonnegative")
        if self.accuracy is not None and not 0.0 <= self.accuracy <= 1.0:
            raise ConfigError(f"{self.name}: accuracy must lie in [0, 1]")
        for label, value in (
            ("default_lifetime_s", self.default_lifetime_s),
            ("default_exec_per_s", self.default_exec_per_s),
        ):
            if value is not None and value <= 0:
                raise ConfigError(f"{self.name}: {label} must be positive")

    def count(self, cls: InstrClass) -> int:
        return self.class_counts.get(cls, 0)

    @property
    def total_instructions(self) -> int:
        return sum(self.class_counts.values())

    def with_counts(self, counts: dict[InstrClass, int]) -> "WorkloadProfile":
        return replace(self, class_counts=dict(counts))

    @classmethod
    def from_trace(
        cls,
        name: str,
        trace: ExecutionTrace,
        nvm_kb: float,
        vm_kb: float,
        **extra,
    ) -> "WorkloadProfile":
        return cls(
            name=name,
            class_counts=dict(trace.class_counts),
            nvm_kb=nvm_kb,
            vm_kb=vm_kb,
            **extra,
        )

    def to_json_obj(self) -> dict:
        obj = {
            "name": self.name,
            "class_counts": {c.value: self.count(c) for c in CLASS_ORDER},
            "nvm_kb": self.nvm_kb,
            "vm_kb": self.vm_kb,
        }
        if self.default_lifetime_s is not None:
            obj["default_lifetime_s"] = self.default_lifetime_s
        if self.default_exec_per_s is not None:
            obj["default_exec_per_s"] = self.default_exec_per_s
        if self.accuracy is not None:
            obj["accuracy"] = self.accuracy
        if self.notes:
            obj["notes"] = self.notes
        if self.provenance is not None:
            obj["provenance"] = self.provenance
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "WorkloadProfile":
        try:
            raw_counts = obj["class_counts"]
            counts = {}
            for key, value in raw_counts.items():
                counts[InstrClass(key)] = int(value)
            return cls(
                name=obj["name"],
                class_counts=counts,
                nvm_kb=float(obj.get("nvm_kb", 0.0)),
                vm_kb=float(obj.get("vm_kb", 0.0)),
                default_lifetime_s=obj.get("default_lifetime_s"),
                default_exec_per_s=obj.get("default_exec_per_s"),
                accuracy=obj.get("accuracy"),
                notes=obj.get("notes", ""),
                provenance=obj.get("provenance"),
            )
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"malformed workload profile: {exc}") from exc
