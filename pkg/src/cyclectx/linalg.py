"""Dense complex linear algebra for Hermitian observables.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The only wrapper
type is :class:`HermitianObservable`, which validates its matrix once at
construction and is treated as immutable afterwards.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (DimensionMismatchError, EigensolverError, NotDichotomousError,
                     NotHermitianError)

HERMITICITY_TOL = 1e-10
DICHOTOMY_TOL = 1e-9
DEGENERACY_TOL = 1e-8
MAX_DIM = 256

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
for _m in (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z):
    _m.setflags(write=False)


def as_matrix(a, name="matrix") -> np.ndarray:
    """Return ``a`` as a square complex128 array, checking shape and size."""
    if isinstance(a, HermitianObservable):
        return a.matrix
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"{name} must be square, got shape {m.shape}")
    if m.shape[0] < 1:
        raise DimensionMismatchError(f"{name} must have dimension >= 1")
    if m.shape[0] > MAX_DIM:
        raise DimensionMismatchError(f"{name} has dimension {m.shape[0]} > {MAX_DIM}")
    return m


def max_norm(a) -> float:
    """Largest absolute entry."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def hermiticity_residual(a) -> float:
    a = np.asarray(a)
    return max_norm(a - a.conj().T)


def is_hermitian(a, tol=HERMITICITY_TOL) -> bool:
    return hermiticity_residual(a) <= tol


def commutator(a, b) -> np.ndarray:
    """``ab - ba``."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape != b.shape:
        raise DimensionMismatchError(f"cannot commute {a.shape} with {b.shape}")
    return a @ b - b @ a


def tensor(a, b) -> np.ndarray:
    """Kronecker product ``a ⊗ b``."""
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def _eigh(a):
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigendecomposition failed: {exc}") from exc
    if not (np.all(np.isfinite(w)) and np.all(np.isfinite(v))):
        raise EigensolverError("eigendecomposition produced non-finite values")
    return w, v


def spectral_norm(a, tol=HERMITICITY_TOL) -> float:
    """Largest absolute eigenvalue of a Hermitian matrix.

    This equals ``sup |<psi|a|psi>|`` over unit vectors.
    """
    m = as_matrix(a)
    res = hermiticity_residual(m)
    if res > tol:
        raise NotHermitianError(f"spectral_norm needs a Hermitian input (residual {res:.3g})")
    w, _ = _eigh(m)
    return float(np.max(np.abs(w)))


@dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct eigenvalues in increasing order with their eigenprojectors."""

    eigenvalues: tuple[float, ...]
    projectors: tuple[np.ndarray, ...]

    @property
    def pairs(self):
        return list(zip(self.eigenvalues, self.projectors))

    def __len__(self):
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        return sum(lam * p for lam, p in self.pairs)

    def projector(self, eigenvalue, tol=DICHOTOMY_TOL) -> np.ndarray:
        """Projector onto the eigenspace for ``eigenvalue``; zero if absent."""
        for lam, p in self.pairs:
            if abs(lam - eigenvalue) <= tol:
                return p
        dim = self.projectors[0].shape[0]
        return np.zeros((dim, dim), dtype=complex)


def spectral_decomposition(a, tol=DEGENERACY_TOL) -> SpectralDecomposition:
    """Group eigenvalues closer than ``tol`` and build their projectors.

    Accepts a :class:`HermitianObservable` or any Hermitian matrix.
    """
    if isinstance(a, HermitianObservable):
        m = a.matrix
    else:
        m = as_matrix(a)
        res = hermiticity_residual(m)
        if res > HERMITICITY_TOL:
            raise NotHermitianError(f"matrix is not Hermitian (residual {res:.3g})")
    w, v = _eigh(m)
    groups = [[0]]
    for k in range(1, len(w)):
        if w[k] - w[groups[-1][-1]] <= tol:
            groups[-1].append(k)
        else:
            groups.append([k])
    eigenvalues = []
    projectors = []
    for g in groups:
        vecs = v[:, g]
        eigenvalues.append(float(np.mean(w[g])))
        p = vecs @ vecs.conj().T
        p.setflags(write=False)
        projectors.append(p)
    return SpectralDecomposition(tuple(eigenvalues), tuple(projectors))


@dataclass(frozen=True, eq=False)
class HermitianObservable:
    """A validated Hermitian matrix with a label.

    With ``dichotomous=True`` (the default) the matrix must also square to the
    identity, i.e. have spectrum inside {-1, +1}.
    """

    matrix: np.ndarray
    label: str = ""
    dichotomous: bool = True

    def __post_init__(self):
        m = np.array(as_matrix(self.matrix, self.label or "observable"), dtype=complex)
        res = hermiticity_residual(m)
        if res > HERMITICITY_TOL:
            raise NotHermitianError(
                f"observable {self.label!r} is not Hermitian (residual {res:.3g})")
        if self.dichotomous:
            dev = max_norm(m @ m - np.eye(m.shape[0]))
            if dev > DICHOTOMY_TOL:
                raise NotDichotomousError(
                    f"observable {self.label!r} is not dichotomous (|X^2 - I| = {dev:.3g})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def spectrum(self) -> SpectralDecomposition:
        return spectral_decomposition(self)

    def projector(self, outcome: int) -> np.ndarray:
        """Eigenprojector for the outcome ``+1`` or ``-1``."""
        return self.spectrum.projector(outcome)

    def __neg__(self):
        return HermitianObservable(-self.matrix, f"-{self.label}" if self.label else "",
                                   self.dichotomous)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


def observable(matrix, label="", dichotomous=True) -> HermitianObservable:
    return HermitianObservable(np.asarray(matrix, dtype=complex), label, dichotomous)
