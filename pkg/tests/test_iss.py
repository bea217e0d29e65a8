"""Unit behavior of the RV32E machine: loading, stepping, faults, invariants."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flexiflow.errors import AlignmentError, LoadError
from flexiflow.iss import InstrClass, encode as e, load_program
from flexiflow.iss.classes import CLASS_ORDER, ONE_STAGE_CLASSES, TWO_STAGE_CLASSES
from flexiflow.iss.machine import profile_memory

from .conftest import run_words


class TestLoadProgram:
    def test_zero_initialized_state(self):
        m = load_program(b"", base=0, entry=0, sp_init=0x1000, mem_size=0x2000)
        assert m.pc == 0
        assert m.reg(2) == 0x1000
        assert all(m.reg(i) == 0 for i in range(16) if i != 2)
        assert not m.halted and m.retired == 0

    def test_image_copied_at_base(self):
        image = bytes(range(8))
        m = load_program(image, base=0x100, entry=0x100, sp_init=0, mem_size=0x200)
        assert m.mem[0x100:0x108].tobytes() == image
        assert not m.mem[:0x100].any()

    def test_image_overflow_is_load_error(self):
        with pytest.raises(LoadError):
            load_program(bytes(0x201), base=0, entry=0, sp_init=0, mem_size=0x200)
        with pytest.raises(LoadError):
            load_program(bytes(8), base=0x1FC, entry=0, sp_init=0, mem_size=0x200)

    def test_misaligned_entry_is_alignment_error(self):
        with pytest.raises(AlignmentError):
            load_program(bytes(8), base=0, entry=2, sp_init=0, mem_size=0x200)

    def test_entry_and_sp_bounds(self):
        with pytest.raises(LoadError):
            load_program(bytes(8), base=0, entry=0x400, sp_init=0, mem_size=0x200)
        with pytest.raises(LoadError):
            load_program(bytes(8), base=0, entry=0, sp_init=0x400, mem_size=0x200)


class TestStep:
    def test_addi_class_and_value(self, backend):
        m = load_program(e.assemble([e.addi(1, 0, 5), e.ecall()]), mem_size=0x100)
        cls = m.step()
        assert cls is InstrClass.ARITH_LOGIC
        assert m.reg(1) == 5
        assert m.retired == 1 and m.pc == 4

    def test_x0_write_reads_zero(self, backend):
        m = load_program(e.assemble([e.addi(1, 0, 7), e.add(0, 1, 1), e.ecall()]), mem_size=0x100)
        m.step()
        m.step()
        assert m.reg(0) == 0

    def test_step_on_halted_machine_raises(self, backend):
        m = load_program(e.assemble([e.ecall()]), mem_size=0x100)
        assert m.step() is InstrClass.SYSTEM
        assert m.halted
        with pytest.raises(RuntimeError):
            m.step()

    def test_fault_step_returns_none_and_does_not_retire(self, backend):
        m = load_program(e.assemble([0x00000000]), mem_size=0x100)
        assert m.step() is None
        assert m.halted and m.halt_reason == "fault"
        assert m.retired == 0

    @pytest.mark.parametrize(
        "word,cls",
        [
            (e.addi(1, 0, 1), InstrClass.ARITH_LOGIC),
            (e.lui(1, 1), InstrClass.UPPER_IMM),
            (e.auipc(1, 1), InstrClass.UPPER_IMM),
            (e.lw(1, 2, 0), InstrClass.LOAD),
            (e.sw(1, 2, 0), InstrClass.STORE),
            (e.beq(0, 0, 4), InstrClass.BRANCH),
            (e.jal(1, 4), InstrClass.JUMP),
            (e.jalr(1, 0, 4), InstrClass.JUMP),
            (e.slli(1, 1, 1), InstrClass.SHIFT),
            (e.sra(1, 1, 3), InstrClass.SHIFT),
            (e.slt(1, 1, 3), InstrClass.SET_LESS_THAN),
            (e.sltiu(1, 1, 3), InstrClass.SET_LESS_THAN),
            (e.fence(), InstrClass.ARITH_LOGIC),
            (e.ecall(), InstrClass.SYSTEM),
        ],
    )
    def test_classification(self, backend, word, cls):
        m = load_program(e.assemble([word]), sp_init=0x80, mem_size=0x100)
        assert m.step() is cls


class TestRun:
    def test_sum_loop(self, backend):
        words = [
            e.addi(1, 0, 0),
            e.addi(2, 0, 10),
            e.add(1, 1, 2),
            e.addi(2, 2, -1),
            e.bne(2, 0, -8),
            e.ecall(),
        ]
        m, trace = run_words(words, sp_init=0)
        assert m.reg(1) == 55
        assert trace.total_instructions == 33
        assert trace.halt_reason == "ecall"
        assert trace.class_counts[InstrClass.ARITH_LOGIC] == 22
        assert trace.class_counts[InstrClass.BRANCH] == 10
        assert trace.class_counts[InstrClass.SYSTEM] == 1

    def test_only_ecall(self, backend):
        _, trace = run_words([e.ecall()])
        assert trace.total_instructions == 1
        assert trace.class_counts[InstrClass.SYSTEM] == 1
        assert all(
            trace.class_counts[c] == 0 for c in CLASS_ORDER if c is not InstrClass.SYSTEM
        )

    def test_max_steps_cutoff(self, backend):
        _, trace = run_words([e.jal(0, 0)], max_steps=100)
        assert trace.total_instructions == 100
        assert trace.halt_reason == "max_steps"

    def test_max_steps_must_be_positive(self):
        m = load_program(e.assemble([e.ecall()]), mem_size=0x100)
        with pytest.raises(ValueError):
            m.run(0)

    def test_class_partition(self, backend):
        words = [
            e.addi(1, 0, 3),
            e.slli(2, 1, 2),
            e.sw(2, 0, 0x40),
            e.lw(3, 0, 0x40),
            e.slt(4, 1, 2),
            e.lui(5, 1),
            e.jal(6, 4),
            e.beq(0, 0, 4),
            e.ecall(),
        ]
        _, trace = run_words(words)
        one = sum(trace.class_counts[c] for c in ONE_STAGE_CLASSES)
        two = sum(trace.class_counts[c] for c in TWO_STAGE_CLASSES)
        system = trace.class_counts[InstrClass.SYSTEM]
        assert trace.total_instructions == sum(trace.class_counts.values())
        assert one + two == trace.total_instructions - system

    def test_determinism(self, backend):
        words = [
            e.addi(1, 0, 50),
            e.add(2, 2, 1),
            e.addi(1, 1, -1),
            e.bne(1, 0, -8),
            e.ecall(),
        ]
        runs = [run_words(words, sp_init=0x200) for _ in range(2)]
        traces = [t for _, t in runs]
        assert traces[0] == traces[1]
        assert (runs[0][0].mem == runs[1][0].mem).all()


class TestStackTracking:
    def test_excursion_from_sp_minimum(self, backend):
        words = [
            e.addi(2, 2, -64),
            e.addi(2, 2, 32),
            e.addi(2, 2, -16),
            e.ecall(),
        ]
        _, trace = run_words(words, sp_init=0x800)
        assert trace.max_stack_excursion == 64

    def test_untouched_sp_gives_zero_excursion(self, backend):
        words = [e.addi(1, 0, 1), e.ecall()]
        _, trace = run_words(words, sp_init=0x800)
        assert trace.max_stack_excursion == 0


class TestProfileMemory:
    def test_arithmetic(self, backend):
        _, trace = run_words([e.addi(2, 2, -512), e.ecall()], sp_init=0x800)
        nvm, vm = profile_memory(bytes(2048), trace, globals_bytes=0)
        assert nvm == 2.0
        assert vm == 0.5

    def test_globals_plus_stack(self, backend):
        _, trace = run_words([e.addi(2, 2, -412), e.ecall()], sp_init=0x800)
        _, vm = profile_memory(b"", trace, globals_bytes=100)
        assert vm == 0.5

    def test_reference_footprints_round_to_table_values(self):
        # Profiles equivalent to the smallest and largest measured workloads.
        from flexiflow.iss.machine import ExecutionTrace

        wq = ExecutionTrace({}, 0, 10, "ecall")
        nvm, vm = profile_memory(bytes(317), wq, globals_bytes=0)
        assert round(nvm, 2) == 0.31 and round(vm, 2) == 0.01
        gr = ExecutionTrace({}, 0, 30_960, "ecall")
        nvm, vm = profile_memory(bytes(205_271), gr, globals_bytes=10_000)
        assert round(nvm, 2) == 200.46 and round(vm, 2) == 40.00


# Random one-instruction programs: register-file ops drawn across formats.
_rand_instr = st.one_of(
    st.builds(e.addi, st.integers(0, 15), st.integers(0, 15), st.integers(-2048, 2047)),
    st.builds(e.add, st.integers(0, 15), st.integers(0, 15), st.integers(0, 15)),
    st.builds(e.sub, st.integers(0, 15), st.integers(0, 15), st.integers(0, 15)),
    st.builds(e.xor, st.integers(0, 15), st.integers(0, 15), st.integers(0, 15)),
    st.builds(e.sltu, st.integers(0, 15), st.integers(0, 15), st.integers(0, 15)),
    st.builds(e.slli, st.integers(0, 15), st.integers(0, 15), st.integers(0, 31)),
    st.builds(e.srai, st.integers(0, 15), st.integers(0, 15), st.integers(0, 31)),
    st.builds(e.lui, st.integers(0, 15), st.integers(0, (1 << 20) - 1)),
)


@settings(max_examples=200, deadline=None)
@given(st.lists(_rand_instr, min_size=1, max_size=30))
def test_x0_reads_zero_after_any_sequence(words):
    m = load_program(e.assemble(words + [e.ecall()]), sp_init=0x400, mem_size=0x800)
    while not m.halted:
        m.step()
        assert m.reg(0) == 0


@settings(max_examples=50, deadline=None)
@given(st.lists(_rand_instr, min_size=1, max_size=30))
def test_runs_are_deterministic(words):
    image = e.assemble(words + [e.ecall()])
    states = []
    for _ in range(2):
        m = load_program(image, sp_init=0x400, mem_size=0x800)
        m.run(1000)
        states.append((m.regs.copy(), m.pc, m.retired))
    assert (states[0][0] == states[1][0]).all()
    assert states[0][1:] == states[1][1:]
