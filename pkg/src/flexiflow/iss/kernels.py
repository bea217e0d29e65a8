"""RV32E execution kernel.

The interpreter inner loop lives in a single flat function so it can be
compiled with numba's @njit or run as plain Python on the same numpy
state arrays. Backend selection happens once at import time via the
FLEXIFLOW_BACKEND environment variable:

    FLEXIFLOW_BACKEND=numba    require numba (error if unavailable)
    FLEXIFLOW_BACKEND=python   force the pure-Python fallback
    unset / auto               numba if importable, else Python

State layout: mem is a uint8 byte array (little-endian), regs is an
int64[16] array holding unsigned 32-bit register values, pc is a plain
int. Keeping registers in int64 lets the same masking arithmetic run
unchanged under both backends.
"""

from __future__ import annotations

import os

import numpy as np

from ..errors import ConfigError

# Kernel class codes; positions must match classes.CLASS_ORDER.
CLS_ARITH_LOGIC = 0
CLS_UPPER_IMM = 1
CLS_LOAD = 2
CLS_STORE = 3
CLS_BRANCH = 4
CLS_JUMP = 5
CLS_SHIFT = 6
CLS_SET_LESS_THAN = 7
CLS_SYSTEM = 8
NUM_CLASSES = 9

# Halt codes returned by exec_loop.
RUN_LIMIT = 0
HALT_ECALL = 1
HALT_EBREAK = 2
FAULT_ILLEGAL_INSTRUCTION = 3
FAULT_ILLEGAL_REGISTER = 4
FAULT_MEMORY = 5
FAULT_MISALIGNED_PC = 6

_MASK32 = 0xFFFFFFFF
_SIGN32 = 0x80000000


def exec_loop(mem, regs, pc, max_steps, class_counts):
    """Execute up to max_steps instructions starting at pc.

    Mutates mem, regs and class_counts in place. Returns a tuple
    (pc, steps_retired, halt_code, last_class, min_sp). Faulting
    instructions do not retire: the machine halts with the pc still
    pointing at the offender and no class counted.
    """
    mem_size = mem.shape[0]
    steps = 0
    last_class = -1
    min_sp = int(regs[2])
    while steps < max_steps:
        if pc < 0 or pc + 4 > mem_size:
            return pc, steps, FAULT_MEMORY, last_class, min_sp
        # Byte reads need an explicit signed cast: numba types int(uint8)
        # as uint64, and mixing uint64 with int64 promotes to float64.
        instr = (
            np.int64(mem[pc])
            | (np.int64(mem[pc + 1]) << 8)
            | (np.int64(mem[pc + 2]) << 16)
            | (np.int64(mem[pc + 3]) << 24)
        )
        opcode = instr & 0x7F
        rd = (instr >> 7) & 0x1F
        funct3 = (instr >> 12) & 0x7
        rs1 = (instr >> 15) & 0x1F
        rs2 = (instr >> 20) & 0x1F
        funct7 = (instr >> 25) & 0x7F
        next_pc = pc + 4
        cls = -1

        if opcode == 0x13:  # OP-IMM
            if rd >= 16 or rs1 >= 16:
                return pc, steps, FAULT_ILLEGAL_REGISTER, last_class, min_sp
            imm = instr >> 20
            if imm & 0x800:
                imm -= 0x1000
            a = int(regs[rs1])
            if funct3 == 0:  # addi
                val = (a + imm) & _MASK32
                cls = CLS_ARITH_LOGIC
            elif funct3 == 2:  # slti
                sa = a - 0x100000000 if a & _SIGN32 else a
                val = 1 if sa < imm else 0
                cls = CLS_SET_LESS_THAN
            elif funct3 == 3:  # sltiu
                val = 1 if a < (imm & _MASK32) else 0
                cls = CLS_SET_LESS_THAN
            elif funct3 == 4:  # xori
                val = (a ^ imm) & _MASK32
                cls = CLS_ARITH_LOGIC
            elif funct3 == 6:  # ori
                val = (a | imm) & _MASK32
                cls = CLS_ARITH_LOGIC
            elif funct3 == 7:  # andi
                val = (a & imm) & _MASK32
                cls = CLS_ARITH_LOGIC
            elif funct3 == 1:  # slli
                if funct7 != 0x00:
                    return pc, steps, FAULT_ILLEGAL_INSTRUCTION, last_class, min_sp
                val = (a << rs2) & _MASK32
                cls = CLS_SHIFT
            else:  # funct3 == 5: srli / srai
                if funct7 == 0x00:
                    val = a >> rs2
                elif funct7 == 0x20:
                    sa = a - 0x100000000 if a & _SIGN32 else a
                    val = (sa >> rs2) & _MASK32
                else:
                    return pc, steps, FAULT_ILLEGAL_INSTRUCTION, last_class, min_sp
                cls = CLS_SHIFT
            if rd != 0:
                regs[rd] = val

        elif opcode == 0x33:  # OP (register-register)
            if rd >= 16 or rs1 >= 16 or rs2 >= 16:
                return pc, steps, FAULT_ILLEGAL_REGISTER, last_class, min_sp
            a = int(regs[rs1])
            b = int(regs[rs2])
            if funct7 == 0x00:
                if funct3 == 0:  # add
                    val = (a + b) & _MASK32
                    cls = CLS_ARITH_LOGIC
                elif funct3 == 1:  # sll
                    val = (a << (b & 0x1F)) & _MASK32
                    cls = CLS_SHIFT
                elif funct3 == 2:  # slt
                    sa = a - 0x100000000 if a & _SIGN32 else a
                    sb = b - 0x100000000 if b & _SIGN32 else b
                    val = 1 if sa < sb else 0
                    cls = CLS_SET_LESS_THAN
                elif funct3 == 3:  # sltu
                    val = 1 if a < b else 0
                    cls = CLS_SET_LESS_THAN
                elif funct3 == 4:  # xor
                    val = a ^ b
                    cls = CLS_ARITH_LOGIC
                elif funct3 == 5:  # srl
                    val = a >> (b & 0x1F)
                    cls = CLS_SHIFT
                elif funct3 == 6:  # or
                    val = a | b
                    cls = CLS_ARITH_LOGIC
                else:  # and
                    val = a & b
                    cls = CLS_ARITH_LOGIC
            elif funct7 == 0x20:
                if funct3 == 0:  # sub
                    val = (a - b) & _MASK32
                    cls = CLS_ARITH_LOGIC
                elif funct3 == 5:  # sra
                    sa = a - 0x100000000 if a & _SIGN32 else a
                    val = (sa >> (b & 0x1F)) & _MASK32
                    cls = CLS_SHIFT
                else:
                    return pc, steps, FAULT_ILLEGAL_INSTRUCTION, last_class, min_sp
            else:
                return pc, steps, FAULT_ILLEGAL_INSTRUCTION, last_class, min_sp
            if rd != 0:
                regs[rd] = val

        elif opcode == 0x03:  # LOAD
            if rd >= 16 or rs1 >= 16:
                return pc, steps, FAULT_ILLEGAL_REGISTER, last_class, min_sp
            imm = instr >> 20
            if imm & 0x800:
                imm -= 0x1000
            addr = (int(regs[rs1]) + imm) & _MASK32
            if funct3 == 0 or funct3 == 4:  # lb / lbu
                if addr + 1 > mem_size:
                    return pc, steps, FAULT_MEMORY, last_class, min_sp
                val = np.int64(mem[addr])
                if funct3 == 0 and val & 0x80:
                    val = (val - 0x100) & _MASK32
            elif funct3 == 1 or funct3 == 5:  # lh / lhu
                if addr + 2 > mem_size:
                    return pc, steps, FAULT_MEMORY, last_class, min_sp
                val = np.int64(mem[addr]) | (np.int64(mem[addr + 1]) << 8)
                if funct3 == 1 and val & 0x8000:
                    val = (val - 0x10000) & _MASK32
            elif funct3 == 2:  # lw
                if addr + 4 > mem_size:
                    return pc, steps, FAULT_MEMORY, last_class, min_sp
                val = (
                    np.int64(mem[addr])
                    | (np.int64(mem[addr + 1]) << 8)
                    | (np.int64(mem[addr + 2]) << 16)
                    | (np.int64(mem[addr + 3]) << 24)
                )
            else:
                return pc, steps, FAULT_ILLEGAL_INSTRUCTION, last_class, min_sp
            if rd != 0:
                regs[rd] = val
            cls = CLS_LOAD

        elif opcode == 0x23:  # STORE
            if rs1 >= 16 or rs2 >= 16:
                return pc, steps, FAULT_ILLEGAL_REGISTER, last_class, min_sp
            imm = ((instr >> 25) << 5) | rd
            if imm & 0x800:
                imm -= 0x1000
            addr = (int(regs[rs1]) + imm) & _MASK32
            val = int(regs[rs2])
            if funct3 == 0:  # sb
                if addr + 1 > mem_size:
                    return pc, steps, FAULT_MEMORY, last_class, min_sp
                mem[addr] = val & 0xFF
            elif funct3 == 1:  # sh
                if addr + 2 > mem_size:
                    return pc, steps, FAULT_MEMORY, last_class, min_sp
                mem[addr] = val & 0xFF
                mem[addr + 1] = (val >> 8) & 0xFF
            elif funct3 == 2:  # sw
                if addr + 4 > mem_size:
                    return pc, steps, FAULT_MEMORY, last_class, min_sp
                mem[addr] = val & 0xFF
                mem[addr + 1] = (val >> 8) & 0xFF
                mem[addr + 2] = (val >> 16) & 0xFF
                mem[addr + 3] = (val >> 24) & 0xFF
            else:
                return pc, steps, FAULT_ILLEGAL_INSTRUCTION, last_class, min_sp
            cls = CLS_STORE

        elif opcode == 0x63:  # BRANCH
            if rs1 >= 16 or rs2 >= 16:
                return pc, steps, FAULT_ILLEGAL_REGISTER, last_class, min_sp
            a = int(regs[rs1])
            b = int(regs[rs2])
            if funct3 == 0:
                taken = a == b
            elif funct3 == 1:
                taken = a != b
            elif funct3 == 4 or funct3 == 5:
                sa = a - 0x100000000 if a & _SIGN32 else a
                sb = b - 0x100000000 if b & _SIGN32 else b
                taken = sa < sb if funct3 == 4 else sa >= sb
            elif funct3 == 6:
                taken = a < b
            elif funct3 == 7:
                taken = a >= b
            else:
                return pc, steps, FAULT_ILLEGAL_INSTRUCTION, last_class, min_sp
            if taken:
                imm = (
                    (((instr >> 31) & 0x1) << 12)
                    | (((instr >> 7) & 0x1) << 11)
                    | (((instr >> 25) & 0x3F) << 5)
                    | (((instr >> 8) & 0xF) << 1)
                )
                if imm & 0x1000:
                    imm -= 0x2000
                target = (pc + imm) & _MASK32
                if target & 0x3:
                    return pc, steps, FAULT_MISALIGNED_PC, last_class, min_sp
                next_pc = target
            cls = CLS_BRANCH

        elif opcode == 0x6F:  # JAL
            if rd >= 16:
                return pc, steps, FAULT_ILLEGAL_REGISTER, last_class, min_sp
            imm = (
                (((instr >> 31) & 0x1) << 20)
                | (((instr >> 12) & 0xFF) << 12)
                | (((instr >> 20) & 0x1) << 11)
                | (((instr >> 21) & 0x3FF) << 1)
            )
            if imm & 0x100000:
                imm -= 0x200000
            target = (pc + imm) & _MASK32
            if target & 0x3:
                return pc, steps, FAULT_MISALIGNED_PC, last_class, min_sp
            if rd != 0:
                regs[rd] = (pc + 4) & _MASK32
            next_pc = target
            cls = CLS_JUMP

        elif opcode == 0x67:  # JALR
            if funct3 != 0:
                return pc, steps, FAULT_ILLEGAL_INSTRUCTION, last_class, min_sp
            if rd >= 16 or rs1 >= 16:
                return pc, steps, FAULT_ILLEGAL_REGISTER, last_class, min_sp
            imm = instr >> 20
            if imm & 0x800:
                imm -= 0x1000
            target = (int(regs[rs1]) + imm) & _MASK32 & ~1
            if target & 0x3:
                return pc, steps, FAULT_MISALIGNED_PC, last_class, min_sp
            if rd != 0:
                regs[rd] = (pc + 4) & _MASK32
            next_pc = target
            cls = CLS_JUMP

        elif opcode == 0x37 or opcode == 0x17:  # LUI / AUIPC
            if rd >= 16:
                return pc, steps, FAULT_ILLEGAL_REGISTER, last_class, min_sp
            val = instr & 0xFFFFF000
            if opcode == 0x17:
                val = (val + pc) & _MASK32
            if rd != 0:
                regs[rd] = val
            cls = CLS_UPPER_IMM

        elif opcode == 0x0F:  # FENCE family: single-pass no-op
            cls = CLS_ARITH_LOGIC

        elif opcode == 0x73:  # SYSTEM
            if funct3 == 0:
                imm12 = instr >> 20
                if imm12 == 0:  # ecall halts the machine
                    class_counts[CLS_SYSTEM] += 1
                    return pc, steps + 1, HALT_ECALL, CLS_SYSTEM, min_sp
                if imm12 == 1:  # ebreak
                    class_counts[CLS_SYSTEM] += 1
                    return pc, steps + 1, HALT_EBREAK, CLS_SYSTEM, min_sp
                return pc, steps, FAULT_ILLEGAL_INSTRUCTION, last_class, min_sp
            # CSR accesses execute as single-pass no-ops on this target.
            if rd >= 16:
                return pc, steps, FAULT_ILLEGAL_REGISTER, last_class, min_sp
            if funct3 < 4 and rs1 >= 16:
                return pc, steps, FAULT_ILLEGAL_REGISTER, last_class, min_sp
            cls = CLS_ARITH_LOGIC

        else:
            return pc, steps, FAULT_ILLEGAL_INSTRUCTION, last_class, min_sp

        class_counts[cls] += 1
        steps += 1
        last_class = cls
        sp = int(regs[2])
        if sp < min_sp:
            min_sp = sp
        pc = next_pc

    return pc, steps, RUN_LIMIT, last_class, min_sp


# Always-available reference to the uncompiled loop (benchmarks, tests).
exec_loop_python = exec_loop


def _resolve_backend() -> str:
    choice = os.environ.get("FLEXIFLOW_BACKEND", "auto").strip().lower()
    if choice in ("python", "numpy"):
        return "python"
    if choice not in ("auto", "numba", ""):
        raise ConfigError(f"unknown FLEXIFLOW_BACKEND value: {choice!r}")
    try:
        import numba  # noqa: F401
    except ImportError:
        if choice == "numba":
            raise ConfigError("FLEXIFLOW_BACKEND=numba but numba is not installed")
        return "python"
    return "numba"


BACKEND = _resolve_backend()

if BACKEND == "numba":
    from numba import njit

    exec_loop = njit(cache=True)(exec_loop_python)
