"""Quantum side: joint distributions, correlations, the CHSH operator and the
commutator-product test for the 4-cycle.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (DimensionMismatchError, IncompatibleObservablesError, InvalidStateError,
                     NotDichotomousError, UnsupportedSignPatternError)
from .linalg import (HERMITICITY_TOL, HermitianObservable, PAULI_X, PAULI_Z, _eigh, as_matrix,
                     commutator, hermiticity_residual, spectral_norm, tensor)
from .scenario import (COMPATIBILITY_TOL, CycleScenario, SignPattern, as_signs,
                       commutator_residual, cycle_edges)

CONDITION_TOL = 1e-7
NEGATIVITY_TOL = 1e-10
OUTCOMES = (1, -1)


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Density matrix: Hermitian, positive semidefinite, unit trace."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(as_matrix(self.matrix, "state"), dtype=complex)
        if hermiticity_residual(m) > HERMITICITY_TOL:
            raise InvalidStateError("density matrix is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1) > 1e-10:
            raise InvalidStateError(f"density matrix has trace {tr.real:.12g}, expected 1")
        w, _ = _eigh(m)
        if w[0] < -1e-10:
            raise InvalidStateError(f"density matrix has negative eigenvalue {w[0]:.3g}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_vector(cls, psi, normalize=False) -> "QuantumState":
        psi = np.asarray(psi, dtype=complex).ravel()
        nrm = np.linalg.norm(psi)
        if normalize:
            if nrm == 0:
                raise InvalidStateError("zero state vector")
            psi = psi / nrm
        elif abs(nrm - 1) > 1e-10:
            raise InvalidStateError(f"state vector has norm {nrm:.12g}, expected 1")
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "QuantumState":
        return cls(np.eye(dim, dtype=complex) / dim)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def expectation(self, a) -> float:
        """``Tr(rho a)`` (real part)."""
        a = as_matrix(a)
        _check_dim(self, a)
        return float(np.real(np.einsum("ij,ji->", self.matrix, a)))


def _check_dim(state: QuantumState, *mats):
    for m in mats:
        d = m.dim if isinstance(m, HermitianObservable) else m.shape[0]
        if d != state.dim:
            raise DimensionMismatchError(
                f"operator dimension {d} does not match state dimension {state.dim}")


def _check_commuting(observables, labels, tol):
    for a, b in itertools.combinations(range(len(observables)), 2):
        r = commutator_residual(observables[a], observables[b])
        if r > tol:
            raise IncompatibleObservablesError((labels[a] + 1, labels[b] + 1), r)


@dataclass(frozen=True)
class JointDistribution:
    """Probabilities over outcome tuples in {-1,+1}^k for observables ``indices``."""

    indices: tuple[int, ...]
    probabilities: dict

    def __getitem__(self, outcome) -> float:
        return self.probabilities.get(tuple(outcome), 0.0)

    @property
    def total(self) -> float:
        return float(sum(self.probabilities.values()))

    def expectation(self, subset=None) -> float:
        """Mean of the product of the outcomes of ``subset`` (all by default)."""
        pos = range(len(self.indices)) if subset is None else [self.indices.index(i) for i in subset]
        return float(sum(p * math.prod(o[k] for k in pos) for o, p in self.probabilities.items()))


def context_jpd(state: QuantumState, observables: Sequence[HermitianObservable],
                indices=None, tol=COMPATIBILITY_TOL) -> JointDistribution:
    """Joint distribution of a commuting family from products of eigenprojectors."""
    observables = list(observables)
    indices = tuple(range(len(observables))) if indices is None else tuple(indices)
    if len(indices) != len(observables):
        raise ValueError("indices and observables differ in length")
    for o in observables:
        if not o.dichotomous:
            raise NotDichotomousError(f"observable {o.label!r} is not dichotomous")
    _check_dim(state, *observables)
    _check_commuting(observables, indices, tol)

    rho = state.matrix
    projs = [{a: o.projector(a) for a in OUTCOMES} for o in observables]
    probs = {}
    # walk the outcome tree so shared prefixes multiply once
    def walk(level, partial, acc):
        if level == len(observables):
            probs[tuple(partial)] = float(np.real(np.einsum("ij,ji->", rho, acc)))
            return
        for a in OUTCOMES:
            walk(level + 1, partial + [a], acc @ projs[level][a])
    walk(0, [], np.eye(state.dim, dtype=complex))
    return JointDistribution(indices, _clean(probs))


def _clean(probs: dict) -> dict:
    low = min(probs.values())
    if low < -NEGATIVITY_TOL:
        raise ArithmeticError(
            f"joint probability {low:.3g} is negative beyond tolerance; "
            "the family is not compatible enough for a joint distribution")
    probs = {k: max(v, 0.0) for k, v in probs.items()}
    total = sum(probs.values())
    return {k: v / total for k, v in probs.items()}


def full_jpd(state: QuantumState, observables: Sequence[HermitianObservable],
             tol=COMPATIBILITY_TOL) -> JointDistribution:
    """Joint distribution of all ``n`` observables; every pair must commute."""
    return context_jpd(state, observables, tol=tol)


def marginal(d: JointDistribution, subset) -> JointDistribution:
    subset = tuple(subset)
    missing = [i for i in subset if i not in d.indices]
    if missing:
        raise ValueError(f"indices {missing} are not variables of the distribution {d.indices}")
    pos = [d.indices.index(i) for i in subset]
    out = {o: 0.0 for o in itertools.product(OUTCOMES, repeat=len(subset))}
    for o, p in d.probabilities.items():
        out[tuple(o[k] for k in pos)] += p
    return JointDistribution(subset, out)


def average(state: QuantumState, a: HermitianObservable) -> float:
    return state.expectation(a.matrix if isinstance(a, HermitianObservable) else a)


def correlation(state: QuantumState, a: HermitianObservable, b: HermitianObservable,
                tol=COMPATIBILITY_TOL) -> float:
    """``Tr(rho a b)`` for a commuting pair."""
    _check_dim(state, a, b)
    r = commutator_residual(a, b)
    if r > tol:
        raise IncompatibleObservablesError((1, 2), r)
    return state.expectation(as_matrix(a) @ as_matrix(b))


def _check_cycle(x, tol):
    n = len(x)
    for i, j in cycle_edges(n):
        r = commutator_residual(x[i], x[j])
        if r > tol:
            raise IncompatibleObservablesError((i + 1, j + 1), r)


def gamma_operator(x: Sequence[HermitianObservable], signs=None,
                   tol=COMPATIBILITY_TOL) -> np.ndarray:
    """Signed sum of the four context products, the operator form of the CHSH expression."""
    x = list(x)
    if len(x) != 4:
        raise ValueError(f"gamma_operator needs 4 observables, got {len(x)}")
    signs = SignPattern.canonical(4) if signs is None else as_signs(signs, 4)
    _check_cycle(x, tol)
    g = sum(s * (as_matrix(x[i]) @ as_matrix(x[j])) for s, (i, j) in zip(signs, cycle_edges(4)))
    # products of commuting Hermitian matrices; drop the rounding asymmetry
    return (g + g.conj().T) / 2


def commutator_product(x: Sequence[HermitianObservable], tol=COMPATIBILITY_TOL):
    """Return ``(i[X1,X3], i[X2,X4], their product)``."""
    x = list(x)
    if len(x) != 4:
        raise ValueError(f"commutator_product needs 4 observables, got {len(x)}")
    _check_cycle(x, tol)
    m13 = 1j * commutator(x[0], x[2])
    m24 = 1j * commutator(x[1], x[3])
    return m13, m24, m13 @ m24


def canonical_gauge(signs: SignPattern) -> tuple[int, ...]:
    """Per-observable signs ``e`` with ``signs[i] * e[i] * e[i+1]`` canonical.

    Flipping an observable flips both adjacent edge signs, so any odd pattern
    maps onto (+,+,+,-) this way while the CHSH operator is left unchanged.
    """
    signs = as_signs(signs, 4)
    if not signs.is_odd:
        raise UnsupportedSignPatternError(
            f"sign pattern {signs} has an even number of minus signs; "
            "the commutator-product test is defined for odd patterns only")
    target = SignPattern.canonical(4)
    e = [1]
    for k in range(3):
        e.append(signs[k] * target[k] * e[k])
    return tuple(e)


@dataclass(frozen=True, eq=False)
class Theorem2Verdict:
    """Outcome of the commutator-product test on a 4-cycle."""

    product_norm: float
    condition_holds: bool
    supremum: float
    witness_state: QuantumState
    witness_value: float
    violation_possible: bool
    m13: np.ndarray
    m24: np.ndarray
    product: np.ndarray
    gamma: np.ndarray
    signs: SignPattern

    def to_dict(self) -> dict:
        return {
            "signs": str(self.signs),
            "product_norm": self.product_norm,
            "condition_holds": self.condition_holds,
            "supremum": self.supremum,
            "witness_value": self.witness_value,
            "violation_possible": self.violation_possible,
        }


def theorem2_check(x: Sequence[HermitianObservable], signs=None, tol=COMPATIBILITY_TOL,
                   condition_tol=CONDITION_TOL) -> Theorem2Verdict:
    """Decide whether some state violates the 4-cycle inequality.

    The commutator product ``i[X1,X3] i[X2,X4]`` is nonzero exactly when the
    largest eigenvalue of the CHSH operator exceeds the classical bound 2.
    The witness is the eigenvector of the CHSH operator with the largest
    absolute eigenvalue; on a tie the positive eigenvalue wins.
    """
    x = list(x)
    signs = SignPattern.canonical(4) if signs is None else as_signs(signs, 4)
    gauge = canonical_gauge(signs)
    _check_cycle(x, tol)
    y = [o if e > 0 else -o for o, e in zip(x, gauge)]
    m13, m24, prod = commutator_product(y, tol)
    gamma = gamma_operator(x, signs, tol)

    product_norm = spectral_norm((prod + prod.conj().T) / 2, tol=1e-9)
    w, v = _eigh(gamma)
    order = np.argsort(-w, kind="stable")
    absw = np.abs(w[order])
    top = order[int(np.argmax(absw >= absw.max() - 1e-12))]
    supremum = float(np.abs(w).max())
    witness = QuantumState.from_vector(v[:, top], normalize=True)
    witness_value = witness.expectation(gamma)
    return Theorem2Verdict(
        product_norm=product_norm,
        condition_holds=product_norm > condition_tol,
        supremum=supremum,
        witness_state=witness,
        witness_value=witness_value,
        violation_possible=supremum > 2 + condition_tol,
        m13=m13, m24=m24, product=prod, gamma=gamma, signs=signs,
    )


def chsh_tensor_construction(left: Sequence[HermitianObservable],
                             right: Sequence[HermitianObservable]) -> list[HermitianObservable]:
    """Place ``left`` on the first tensor factor and ``right`` on the second.

    Returns ``[L1⊗I, I⊗R1, L2⊗I, I⊗R2]`` so that consecutive cycle members act
    on different factors and every context commutes exactly.
    """
    left, right = list(left), list(right)
    if len(left) != 2 or len(right) != 2:
        raise ValueError("need two observables on each factor")
    for o in left + right:
        if not o.dichotomous:
            raise NotDichotomousError(f"observable {o.label!r} is not dichotomous")
    il = np.eye(left[0].dim)
    ir = np.eye(right[0].dim)
    if left[0].dim != left[1].dim or right[0].dim != right[1].dim:
        raise DimensionMismatchError("observables on one factor must share a dimension")

    def lift(o, m, k):
        return HermitianObservable(m, o.label or f"X{k}")
    return [
        lift(left[0], tensor(left[0], ir), 1),
        lift(right[0], tensor(il, right[0]), 2),
        lift(left[1], tensor(left[1], ir), 3),
        lift(right[1], tensor(il, right[1]), 4),
    ]


def standard_chsh_observables() -> list[HermitianObservable]:
    """Z, X on the first qubit; (Z±X)/√2 on the second."""
    r = 1 / math.sqrt(2)
    left = [HermitianObservable(PAULI_Z, "Z"), HermitianObservable(PAULI_X, "X")]
    right = [HermitianObservable(r * (PAULI_Z + PAULI_X), "(Z+X)/sqrt2"),
             HermitianObservable(r * (PAULI_Z - PAULI_X), "(Z-X)/sqrt2")]
    obs = chsh_tensor_construction(left, right)
    return [HermitianObservable(o.matrix, f"X{k}") for k, o in enumerate(obs, start=1)]


def singlet_state() -> QuantumState:
    psi = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2)
    return QuantumState.from_vector(psi)


def cycle_correlations(s: CycleScenario, state: QuantumState, tol=COMPATIBILITY_TOL) -> np.ndarray:
    """Correlations of every context, in cycle order."""
    return np.array([correlation(state, s[i], s[j], tol) for i, j in s.contexts])


def quantum_value(s: CycleScenario, signs, state: QuantumState, tol=COMPATIBILITY_TOL) -> float:
    """Signed sum of context correlations for ``state``."""
    signs = as_signs(signs, s.n)
    _check_dim(state, s[0])
    _check_cycle(list(s.observables), tol)
    return float(np.dot(signs.signs, cycle_correlations(s, state, tol)))


def identity_observable(dim: int, label="I") -> HermitianObservable:
    return HermitianObservable(np.eye(dim, dtype=complex), label)


__all__ = [
    "QuantumState", "JointDistribution", "Theorem2Verdict", "context_jpd", "full_jpd", "marginal",
    "average", "correlation", "gamma_operator", "commutator_product", "theorem2_check",
    "chsh_tensor_construction", "standard_chsh_observables", "singlet_state",
    "cycle_correlations", "quantum_value", "canonical_gauge", "identity_observable",
    "CONDITION_TOL",
]
