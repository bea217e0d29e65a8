"""Hand assembler for RV32E test programs.

Each helper returns a 32-bit little-endian instruction word. Offsets for
branches and jumps are byte offsets relative to the instruction address,
exactly as encoded in the B/J immediate fields.
"""

from __future__ import annotations

import struct


def _check_reg(r: int) -> int:
    if not 0 <= r < 16:
        raise ValueError(f"register x{r} outside RV32E range x0..x15")
    return r


def _check_imm(imm: int, bits: int) -> int:
    lo, hi = -(1 << (bits - 1)), (1 << (bits - 1)) - 1
    if not lo <= imm <= hi:
        raise ValueError(f"immediate {imm} does not fit in {bits} signed bits")
    return imm & ((1 << bits) - 1)


def _r(funct7: int, rs2: int, rs1: int, funct3: int, rd: int, opcode: int) -> int:
    return (
        (funct7 << 25)
        | (_check_reg(rs2) << 20)
        | (_check_reg(rs1) << 15)
        | (funct3 << 12)
        | (_check_reg(rd) << 7)
        | opcode
    )


def _i(imm: int, rs1: int, funct3: int, rd: int, opcode: int) -> int:
    return (
        (_check_imm(imm, 12) << 20)
        | (_check_reg(rs1) << 15)
        | (funct3 << 12)
        | (_check_reg(rd) << 7)
        | opcode
    )


def _s(imm: int, rs2: int, rs1: int, funct3: int, opcode: int) -> int:
    v = _check_imm(imm, 12)
    return (
        ((v >> 5) << 25)
        | (_check_reg(rs2) << 20)
        | (_check_reg(rs1) << 15)
        | (funct3 << 12)
        | ((v & 0x1F) << 7)
        | opcode
    )


def _b(offset: int, rs2: int, rs1: int, funct3: int) -> int:
    if offset % 2:
        raise ValueError("branch offset must be even")
    v = _check_imm(offset, 13)
    return (
        (((v >> 12) & 0x1) << 31)
        | (((v >> 5) & 0x3F) << 25)
        | (_check_reg(rs2) << 20)
        | (_check_reg(rs1) << 15)
        | (funct3 << 12)
        | (((v >> 1) & 0xF) << 8)
        | (((v >> 11) & 0x1) << 7)
        | 0x63
    )


def _shift(funct7: int, shamt: int, rs1: int, funct3: int, rd: int) -> int:
    if not 0 <= shamt < 32:
        raise ValueError("shift amount must be in 0..31")
    return (
        (funct7 << 25)
        | (shamt << 20)
        | (_check_reg(rs1) << 15)
        | (funct3 << 12)
        | (_check_reg(rd) << 7)
        | 0x13
    )


# Register-register
def add(rd, rs1, rs2): return _r(0x00, rs2, rs1, 0, rd, 0x33)
def sub(rd, rs1, rs2): return _r(0x20, rs2, rs1, 0, rd, 0x33)
def sll(rd, rs1, rs2): return _r(0x00, rs2, rs1, 1, rd, 0x33)
def slt(rd, rs1, rs2): return _r(0x00, rs2, rs1, 2, rd, 0x33)
def sltu(rd, rs1, rs2): return _r(0x00, rs2, rs1, 3, rd, 0x33)
def xor(rd, rs1, rs2): return _r(0x00, rs2, rs1, 4, rd, 0x33)
def srl(rd, rs1, rs2): return _r(0x00, rs2, rs1, 5, rd, 0x33)
def sra(rd, rs1, rs2): return _r(0x20, rs2, rs1, 5, rd, 0x33)
def or_(rd, rs1, rs2): return _r(0x00, rs2, rs1, 6, rd, 0x33)
def and_(rd, rs1, rs2): return _r(0x00, rs2, rs1, 7, rd, 0x33)


# Register-immediate
def addi(rd, rs1, imm): return _i(imm, rs1, 0, rd, 0x13)
def slti(rd, rs1, imm): return _i(imm, rs1, 2, rd, 0x13)
def sltiu(rd, rs1, imm): return _i(imm, rs1, 3, rd, 0x13)
def xori(rd, rs1, imm): return _i(imm, rs1, 4, rd, 0x13)
def ori(rd, rs1, imm): return _i(imm, rs1, 6, rd, 0x13)
def andi(rd, rs1, imm): return _i(imm, rs1, 7, rd, 0x13)
def slli(rd, rs1, shamt): return _shift(0x00, shamt, rs1, 1, rd)
def srli(rd, rs1, shamt): return _shift(0x00, shamt, rs1, 5, rd)
def srai(rd, rs1, shamt): return _shift(0x20, shamt, rs1, 5, rd)


# Memory
def lb(rd, rs1, imm): return _i(imm, rs1, 0, rd, 0x03)
def lh(rd, rs1, imm): return _i(imm, rs1, 1, rd, 0x03)
def lw(rd, rs1, imm): return _i(imm, rs1, 2, rd, 0x03)
def lbu(rd, rs1, imm): return _i(imm, rs1, 4, rd, 0x03)
def lhu(rd, rs1, imm): return _i(imm, rs1, 5, rd, 0x03)
def sb(rs2, rs1, imm): return _s(imm, rs2, rs1, 0, 0x23)
def sh(rs2, rs1, imm): return _s(imm, rs2, rs1, 1, 0x23)
def sw(rs2, rs1, imm): return _s(imm, rs2, rs1, 2, 0x23)


# Control flow
def beq(rs1, rs2, offset): return _b(offset, rs2, rs1, 0)
def bne(rs1, rs2, offset): return _b(offset, rs2, rs1, 1)
def blt(rs1, rs2, offset): return _b(offset, rs2, rs1, 4)
def bge(rs1, rs2, offset): return _b(offset, rs2, rs1, 5)
def bltu(rs1, rs2, offset): return _b(offset, rs2, rs1, 6)
def bgeu(rs1, rs2, offset): return _b(offset, rs2, rs1, 7)


def jal(rd, offset):
    if offset % 2:
        raise ValueError("jump offset must be even")
    v = _check_imm(offset, 21)
    return (
        (((v >> 20) & 0x1) << 31)
        | (((v >> 1) & 0x3FF) << 21)
        | (((v >> 11) & 0x1) << 20)
        | (((v >> 12) & 0xFF) << 12)
        | (_check_reg(rd) << 7)
        | 0x6F
    )


def jalr(rd, rs1, imm): return _i(imm, rs1, 0, rd, 0x67)


# Upper immediates; imm20 is the raw 20-bit field (value placed in bits 31:12)
def lui(rd, imm20):
    if not 0 <= imm20 < (1 << 20):
        raise ValueError("lui immediate must be an unsigned 20-bit field value")
    return (imm20 << 12) | (_check_reg(rd) << 7) | 0x37


def auipc(rd, imm20):
    if not 0 <= imm20 < (1 << 20):
        raise ValueError("auipc immediate must be an unsigned 20-bit field value")
    return (imm20 << 12) | (_check_reg(rd) << 7) | 0x17


# System / misc
def ecall(): return 0x00000073
def ebreak(): return 0x00100073
def fence(): return 0x0000000F
def nop(): return addi(0, 0, 0)


def li(rd, value):
    """Expand to a lui+addi pair (or a single addi) loading a 32-bit constant."""
    value &= 0xFFFFFFFF
    signed = value - 0x100000000 if value & 0x80000000 else value
    if -2048 <= signed <= 2047:
        return [addi(rd, 0, signed)]
    upper = (value + 0x800) >> 12
    lower = value - (upper << 12)  # in [-2048, 2047] by construction
    words = [lui(rd, upper & 0xFFFFF)]
    if lower != 0:
        words.append(addi(rd, rd, lower))
    return words


def assemble(words) -> bytes:
    """Pack a sequence of 32-bit instruction words into little-endian bytes."""
    return b"".join(struct.pack("<I", w & 0xFFFFFFFF) for w in words)
