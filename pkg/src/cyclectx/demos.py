"""Bundled example scenarios."""
from __future__ import annotations

import math

import numpy as np

from .classical import CorrelationData
from .io import scenario_to_dict
from .linalg import PAULI_I, PAULI_X, PAULI_Z, HermitianObservable, tensor
from .quantum import standard_chsh_observables, theorem2_check
from .scenario import SignPattern, build_cycle_scenario

DEMOS = ("chsh", "commuting", "suppes-zanotti", "original-bell")


def _obs(m, label):
    return HermitianObservable(m, label)


def _spin(theta):
    """Spin along angle ``theta`` in the z-x plane."""
    return math.cos(theta) * PAULI_Z + math.sin(theta) * PAULI_X


def chsh():
    x = standard_chsh_observables()
    verdict = theorem2_check(x)
    psi = np.linalg.eigh(verdict.witness_state.matrix)[1][:, -1]
    return scenario_to_dict(build_cycle_scenario(x), SignPattern.canonical(4), pure_vector=psi)


def commuting():
    zi, iz = tensor(PAULI_Z, PAULI_I), tensor(PAULI_I, PAULI_Z)
    x = [_obs(zi, "ZI"), _obs(iz, "IZ"), _obs(zi @ iz, "ZZ"), _obs(-zi, "-ZI")]
    psi = np.array([0.6, 0.0, 0.0, 0.8])
    return scenario_to_dict(build_cycle_scenario(x), SignPattern.canonical(4), pure_vector=psi)


def suppes_zanotti():
    zi, iz = tensor(PAULI_Z, PAULI_I), tensor(PAULI_I, PAULI_Z)
    x = [_obs(zi, "ZI"), _obs(iz, "IZ"), _obs(zi @ iz, "ZZ")]
    psi = np.array([0.6, 0.0, 0.0, 0.8])
    data = CorrelationData.from_cycle([1.0, -1.0, 1.0])
    return scenario_to_dict(build_cycle_scenario(x), SignPattern((1, -1, 1)), pure_vector=psi,
                            data=data)


def original_bell():
    a, b, c = 0.0, math.pi / 3, -math.pi / 3
    x = [_obs(tensor(_spin(a), PAULI_I), "A(a)"), _obs(tensor(PAULI_I, _spin(b)), "B(b)"),
         _obs(tensor(_spin(b), PAULI_I), "A(b)"), _obs(tensor(PAULI_I, _spin(c)), "B(c)")]
    phi_plus = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2)
    data = CorrelationData.from_cycle([1.0, 1.0, 1.0, 1.0])
    return scenario_to_dict(build_cycle_scenario(x), SignPattern.canonical(4),
                            pure_vector=phi_plus, data=data)


_BUILDERS = {"chsh": chsh, "commuting": commuting, "suppes-zanotti": suppes_zanotti,
             "original-bell": original_bell}


def demo_document(name: str) -> dict:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown demo {name!r}; choose from {', '.join(DEMOS)}") from None
