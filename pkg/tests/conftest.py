import math

import numpy as np
import pytest

from cyclectx.linalg import PAULI_I, PAULI_X, PAULI_Y, PAULI_Z, HermitianObservable, tensor
from cyclectx.quantum import QuantumState, singlet_state, standard_chsh_observables

SQRT2 = math.sqrt(2)
TSIRELSON = 2 * SQRT2

_ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, text in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {text}")


@pytest.fixture
def record():
    """Register one acceptance line; call before asserting."""
    def _record(number, ok, text):
        _ACCEPTANCE.append((number, bool(ok), text))
        return ok
    return _record


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def chsh_obs():
    return standard_chsh_observables()


@pytest.fixture
def singlet():
    return singlet_state()


def obs(m, label=""):
    return HermitianObservable(np.asarray(m, dtype=complex), label)


Z = obs(PAULI_Z, "Z")
X = obs(PAULI_X, "X")
Y = obs(PAULI_Y, "Y")
ZI = obs(tensor(PAULI_Z, PAULI_I), "ZI")
IZ = obs(tensor(PAULI_I, PAULI_Z), "IZ")
XI = obs(tensor(PAULI_X, PAULI_I), "XI")


def ket0():
    return QuantumState.from_vector([1, 0])
