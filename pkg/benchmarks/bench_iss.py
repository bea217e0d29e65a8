#!/usr/bin/env python3
"""Benchmark the interpreter kernel: numba @njit vs pure-Python fallback.

Runs a register-pressure loop for a fixed instruction budget on both
backends and reports retired instructions per second. The numba first
call includes JIT compilation, so it is warmed separately.

Usage: python benchmarks/bench_iss.py [--steps N]
"""

from __future__ import annotations

import argparse
from timeit import default_timer as timer

import numpy as np

from flexiflow.iss import encode as enc
from flexiflow.iss.kernels import NUM_CLASSES, exec_loop_python

LOOP = [
    enc.addi(1, 0, 0),
    *enc.li(3, 1 << 30),  # iteration budget far above any step cap
    enc.add(1, 1, 3),  # loop body: mixed one- and two-stage work
    enc.xori(4, 1, 0x2F3),
    enc.slli(5, 4, 3),
    enc.sltu(6, 5, 1),
    enc.sw(5, 2, 0),
    enc.lw(7, 2, 0),
    enc.addi(3, 3, -1),
    enc.bne(3, 0, -28),
    enc.ecall(),
]


def fresh_state(mem_size=1 << 16):
    mem = np.zeros(mem_size, dtype=np.uint8)
    image = enc.assemble(LOOP)
    mem[: len(image)] = np.frombuffer(image, dtype=np.uint8)
    regs = np.zeros(16, dtype=np.int64)
    regs[2] = mem_size - 16
    return mem, regs


def run(kernel, steps):
    mem, regs = fresh_state()
    counts = np.zeros(NUM_CLASSES, dtype=np.int64)
    start = timer()
    _pc, retired, _code, _cls, _sp = kernel(mem, regs, 0, steps, counts)
    elapsed = timer() - start
    return int(retired), elapsed, regs


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=2_000_000)
    args = parser.parse_args()

    results = {}
    state_check = {}

    print("== pure Python ==")
    py_steps = min(args.steps, 300_000)  # keep the slow path bounded
    retired, elapsed, regs = run(exec_loop_python, py_steps)
    results["python"] = retired / elapsed
    state_check["python"] = regs.copy()
    print(f"{retired} instructions in {elapsed:.3f}s -> {retired / elapsed / 1e6:.2f} Minstr/s")

    try:
        from numba import njit
    except ImportError:
        print("numba not installed; skipping JIT comparison")
        return

    kernel = njit(cache=True)(exec_loop_python)
    run(kernel, 1000)  # warm: compile outside the timed region

    print("== numba @njit ==")
    retired, elapsed, regs = run(kernel, args.steps)
    results["numba"] = retired / elapsed
    state_check["numba"] = regs.copy()
    print(f"{retired} instructions in {elapsed:.3f}s -> {retired / elapsed / 1e6:.2f} Minstr/s")

    # Both backends must agree on architectural state for the same budget.
    r1, _, s1 = run(exec_loop_python, 50_000)
    r2, _, s2 = run(kernel, 50_000)
    assert r1 == r2 and (s1 == s2).all(), "backend divergence"

    print(f"speedup: {results['numba'] / results['python']:.1f}x")


if __name__ == "__main__":
    main()
