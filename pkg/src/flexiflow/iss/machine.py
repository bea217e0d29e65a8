"""RV32E machine state, program loading, execution and memory profiling."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import AlignmentError, LoadError
from . import kernels
from .classes import CLASS_ORDER, InstrClass

DEFAULT_MEM_SIZE = 1 << 20

_HALT_REASON = {
    kernels.HALT_ECALL: "ecall",
    kernels.HALT_EBREAK: "ebreak",
    kernels.FAULT_ILLEGAL_INSTRUCTION: "fault",
    kernels.FAULT_ILLEGAL_REGISTER: "fault",
    kernels.FAULT_MEMORY: "fault",
    kernels.FAULT_MISALIGNED_PC: "fault",
}

_FAULT_DETAIL = {
    kernels.FAULT_ILLEGAL_INSTRUCTION: "illegal_instruction",
    kernels.FAULT_ILLEGAL_REGISTER: "illegal_register",
    kernels.FAULT_MEMORY: "memory",
    kernels.FAULT_MISALIGNED_PC: "misaligned_pc",
}


@dataclass
class ExecutionTrace:
    """Aggregate result of running a program to completion or a step cap."""

    class_counts: dict[InstrClass, int]
    total_instructions: int
    max_stack_excursion: int  # initial sp minus minimum sp observed, bytes
    halt_reason: str  # ecall | ebreak | max_steps | fault
    fault_detail: str | None = None

    def to_json_obj(self) -> dict:
        obj = {
            "class_counts": {c.value: self.class_counts[c] for c in CLASS_ORDER},
            "total_instructions": self.total_instructions,
            "max_stack_excursion": self.max_stack_excursion,
            "halt_reason": self.halt_reason,
        }
        if self.fault_detail is not None:
            obj["fault_detail"] = self.fault_detail
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ExecutionTrace":
        return cls(
            class_counts={InstrClass(k): int(v) for k, v in obj["class_counts"].items()},
            total_instructions=int(obj["total_instructions"]),
            max_stack_excursion=int(obj["max_stack_excursion"]),
            halt_reason=obj["halt_reason"],
            fault_detail=obj.get("fault_detail"),
        )


@dataclass
class Machine:
    """A single-hart RV32E machine over a flat byte-addressable memory.

    Registers live in an int64[16] array holding unsigned 32-bit values;
    x0 reads as zero after every step. One Machine instance is not
    thread-safe, but independent instances share nothing.
    """

    mem: np.ndarray
    regs: np.ndarray
    pc: int
    halted: bool = False
    halt_code: int = kernels.RUN_LIMIT
    retired: int = 0
    sp_initial: int = 0
    min_sp: int = 0
    class_counts: np.ndarray = field(
        default_factory=lambda: np.zeros(kernels.NUM_CLASSES, dtype=np.int64)
    )

    @property
    def halt_reason(self) -> str | None:
        if not self.halted:
            return None
        return _HALT_REASON.get(self.halt_code, "max_steps")

    @property
    def fault_detail(self) -> str | None:
        return _FAULT_DETAIL.get(self.halt_code)

    def reg(self, index: int) -> int:
        return int(self.regs[index])

    def step(self) -> InstrClass | None:
        """Execute one instruction; return its class, or None on a fault."""
        if self.halted:
            raise RuntimeError("machine is halted")
        pc, steps, code, last_class, min_sp = kernels.exec_loop(
            self.mem, self.regs, self.pc, 1, self.class_counts
        )
        self.pc = int(pc)
        self.retired += int(steps)
        self.min_sp = min(self.min_sp, int(min_sp))
        if code != kernels.RUN_LIMIT:
            self.halted = True
            self.halt_code = int(code)
        if steps == 0:
            return None
        return CLASS_ORDER[int(last_class)]

    def run(self, max_steps: int) -> ExecutionTrace:
        """Run until halt or max_steps retired instructions, whichever first."""
        if max_steps <= 0:
            raise ValueError("max_steps must be positive")
        if self.halted:
            raise RuntimeError("machine is halted")
        pc, steps, code, _last, min_sp = kernels.exec_loop(
            self.mem, self.regs, self.pc, max_steps, self.class_counts
        )
        self.pc = int(pc)
        self.retired += int(steps)
        self.min_sp = min(self.min_sp, int(min_sp))
        if code != kernels.RUN_LIMIT:
            self.halted = True
            self.halt_code = int(code)
            reason = _HALT_REASON[int(code)]
        else:
            reason = "max_steps"
        counts = {cls: int(self.class_counts[i]) for i, cls in enumerate(CLASS_ORDER)}
        return ExecutionTrace(
            class_counts=counts,
            total_instructions=self.retired,
            max_stack_excursion=max(0, self.sp_initial - self.min_sp),
            halt_reason=reason,
            fault_detail=self.fault_detail,
        )


def load_program(
    image: bytes,
    base: int = 0,
    entry: int = 0,
    sp_init: int = 0,
    mem_size: int = DEFAULT_MEM_SIZE,
) -> Machine:
    """Place a flat little-endian binary into memory and build the reset state.

    All registers start at zero except x2 (sp) = sp_init; pc = entry.
    """
    if mem_size <= 0:
        raise LoadError("memory size must be positive")
    if base < 0 or base + len(image) > mem_size:
        raise LoadError(
            f"image of {len(image)} bytes at base {base:#x} overflows {mem_size}-byte memory"
        )
    if entry % 4 != 0:
        raise AlignmentError(f"entry point {entry:#x} is not 4-byte aligned")
    if not 0 <= entry < mem_size:
        raise LoadError(f"entry point {entry:#x} outside memory")
    if not 0 <= sp_init <= mem_size:
        raise LoadError(f"initial sp {sp_init:#x} outside memory")
    mem = np.zeros(mem_size, dtype=np.uint8)
    if image:
        mem[base : base + len(image)] = np.frombuffer(bytes(image), dtype=np.uint8)
    regs = np.zeros(16, dtype=np.int64)
    regs[2] = sp_init
    return Machine(mem=mem, regs=regs, pc=entry, sp_initial=sp_init, min_sp=sp_init)


def profile_memory(
    image: bytes, trace: ExecutionTrace, globals_bytes: int = 0
) -> tuple[float, float]:
    """Derive (nvm_kb, vm_kb) from an image and a completed execution trace.

    Non-volatile memory covers code plus constants (the image itself);
    volatile memory covers globals plus the peak stack excursion. Flat
    binaries carry no section headers, so globals_bytes is caller-supplied.
    """
    nvm_kb = len(image) / 1024.0
    vm_kb = (globals_bytes + trace.max_stack_excursion) / 1024.0
    return nvm_kb, vm_kb
