"""RV32E instruction-set simulation: machine state, execution, profiling."""

from .classes import CLASS_ORDER, InstrClass
from .kernels import BACKEND
from .machine import DEFAULT_MEM_SIZE, ExecutionTrace, Machine, load_program, profile_memory

__all__ = [
    "BACKEND",
    "CLASS_ORDER",
    "DEFAULT_MEM_SIZE",
    "ExecutionTrace",
    "InstrClass",
    "Machine",
    "load_program",
    "profile_memory",
]
