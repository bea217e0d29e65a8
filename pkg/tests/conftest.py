from __future__ import annotations

import pytest

from flexiflow import datapacks
from flexiflow.iss import encode, kernels
from flexiflow.iss.machine import load_program


@pytest.fixture(scope="session")
def cores():
    return datapacks.load_cores()


@pytest.fixture(scope="session")
def memory_model():
    return datapacks.load_memory_model()


@pytest.fixture(scope="session")
def foundry():
    return datapacks.load_foundry()


@pytest.fixture(scope="session")
def energy_sources():
    return datapacks.load_energy_sources()


@pytest.fixture(params=["native", "python"])
def backend(request, monkeypatch):
    """Run ISS tests under the resolved backend and the pure-Python fallback."""
    if request.param == "python":
        monkeypatch.setattr(kernels, "exec_loop", kernels.exec_loop_python)
    return request.param


def run_words(words, sp_init=0x800, mem_size=0x1000, max_steps=10_000):
    machine = load_program(
        encode.assemble(words), base=0, entry=0, sp_init=sp_init, mem_size=mem_size
    )
    trace = machine.run(max_steps)
    return machine, trace
