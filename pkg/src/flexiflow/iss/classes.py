"""Instruction timing classes for the bit-serial execution model.

Every retired RV32E instruction maps to exactly one class. Classes split
into one-stage instructions (single pass through the serial datapath) and
two-stage instructions (two passes: operand read-out, then writeback).
System instructions (ECALL/EBREAK) halt the machine and cost no cycles.
"""

from __future__ import annotations

import enum


class InstrClass(enum.Enum):
    ARITH_LOGIC = "arith_logic"
    UPPER_IMM = "upper_imm"
    LOAD = "load"
    STORE = "store"
    BRANCH = "branch"
    JUMP = "jump"
    SHIFT = "shift"
    SET_LESS_THAN = "set_less_than"
    SYSTEM = "system"

    @property
    def stage(self) -> str:
        if self in _TWO_STAGE:
            return "two_stage"
        if self is InstrClass.SYSTEM:
            return "system"
        return "one_stage"


_TWO_STAGE = frozenset(
    {
        InstrClass.LOAD,
        InstrClass.STORE,
        InstrClass.BRANCH,
        InstrClass.JUMP,
        InstrClass.SHIFT,
        InstrClass.SET_LESS_THAN,
    }
)

ONE_STAGE_CLASSES = (InstrClass.ARITH_LOGIC, InstrClass.UPPER_IMM)
TWO_STAGE_CLASSES = tuple(c for c in InstrClass if c in _TWO_STAGE)

# Positional codes used by the execution kernel; index == kernel class id.
CLASS_ORDER = tuple(InstrClass)
CLASS_INDEX = {cls: i for i, cls in enumerate(CLASS_ORDER)}
