"""Golden instruction encodings, hand-assembled from the ISA encoding tables."""

import struct

import pytest

from flexiflow.iss import encode as e

GOLDEN = [
    (e.nop(), 0x00000013),
    (e.ecall(), 0x00000073),
    (e.ebreak(), 0x00100073),
    (e.jalr(0, 1, 0), 0x00008067),  # ret
    (e.addi(1, 0, 5), 0x00500093),
    (e.lw(1, 2, 0), 0x00012083),
    (e.sw(1, 2, 0), 0x00112023),
    (e.lui(1, 0x12345), 0x123450B7),
    (e.jal(0, 0), 0x0000006F),
    (e.beq(0, 0, 0), 0x00000063),
    (e.srai(1, 2, 3), 0x40315093),
    (e.bne(2, 0, -8), 0xFE011CE3),
]


@pytest.mark.parametrize("word,expected", GOLDEN)
def test_golden_words(word, expected):
    assert word == expected, f"{word:#010x} != {expected:#010x}"


def test_assemble_little_endian():
    blob = e.assemble([0x00500093])
    assert blob == struct.pack("<I", 0x00500093)
    assert blob[0] == 0x93


def test_li_small_and_large():
    assert e.li(1, 5) == [e.addi(1, 0, 5)]
    assert e.li(1, -2048) == [e.addi(1, 0, -2048)]
    assert e.li(1, 0x12345678) == [e.lui(1, 0x12345), e.addi(1, 1, 0x678)]
    # lower half that forces upper rounding
    assert e.li(1, 0xFFFF) == [e.lui(1, 0x10), e.addi(1, 1, -1)]


def test_register_range_enforced():
    with pytest.raises(ValueError):
        e.addi(16, 0, 0)
    with pytest.raises(ValueError):
        e.add(1, 17, 2)


def test_immediate_range_enforced():
    with pytest.raises(ValueError):
        e.addi(1, 0, 2048)
    with pytest.raises(ValueError):
        e.slli(1, 1, 32)
