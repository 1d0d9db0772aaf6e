"""Seeded random observables, states and scenario families for property tests.

Every function takes an explicit ``numpy.random.Generator``.
"""
from __future__ import annotations

import numpy as np

from .linalg import HermitianObservable
from .quantum import QuantumState, chsh_tensor_construction


def rng_for(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def _from_diagonal(u, diag):
    m = (u * diag) @ u.conj().T
    return (m + m.conj().T) / 2


def random_signs(dim: int, rng, both=True) -> np.ndarray:
    """Random ±1 diagonal; with ``both`` each sign occurs at least once (dim >= 2)."""
    while True:
        d = rng.choice([-1.0, 1.0], size=dim)
        if not both or dim < 2 or (d.max() > 0 and d.min() < 0):
            return d


def random_dichotomous(dim: int, rng, label="", both=True) -> HermitianObservable:
    return HermitianObservable(_from_diagonal(random_unitary(dim, rng), random_signs(dim, rng, both)),
                               label)


def random_commuting_family(k: int, dim: int, rng, labels=None) -> list[HermitianObservable]:
    """``k`` dichotomous observables diagonal in one shared random basis."""
    u = random_unitary(dim, rng)
    labels = labels or [f"X{i + 1}" for i in range(k)]
    return [HermitianObservable(_from_diagonal(u, random_signs(dim, rng, both=False)), lab)
            for lab in labels]


def random_state(dim: int, rng, rank=None) -> QuantumState:
    """Random density matrix of the given rank (full rank unless stated)."""
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return QuantumState(rho / np.trace(rho).real)


def random_pure_state(dim: int, rng) -> QuantumState:
    return random_state(dim, rng, rank=1)


def random_tensor_quadruple(rng, dims=(2, 2)) -> list[HermitianObservable]:
    """Cycle-compatible quadruple from two random local pairs."""
    dl, dr = dims
    left = [random_dichotomous(dl, rng), random_dichotomous(dl, rng)]
    right = [random_dichotomous(dr, rng), random_dichotomous(dr, rng)]
    return chsh_tensor_construction(left, right)


def random_zero_product_quadruple(rng, dims=(2, 2)) -> list[HermitianObservable]:
    """Cycle-compatible quadruple whose commutator product vanishes.

    One local pair is drawn commuting; which side is random.
    """
    dl, dr = dims
    left = [random_dichotomous(dl, rng), random_dichotomous(dl, rng)]
    right = [random_dichotomous(dr, rng), random_dichotomous(dr, rng)]
    if rng.random() < 0.5:
        left = random_commuting_family(2, dl, rng)
    else:
        right = random_commuting_family(2, dr, rng)
    return chsh_tensor_construction(left, right)


def random_shared_partner_quadruple(rng, dim=4) -> list[HermitianObservable]:
    """Non-tensor quadruple with ``X2 == X4``: cycle-compatible, zero product.

    ``X1`` and ``X3`` live in the commutant of ``X2`` and need not commute.
    """
    u = random_unitary(dim, rng)
    half = dim // 2
    x2 = _from_diagonal(u, np.r_[np.ones(half), -np.ones(dim - half)])

    def in_commutant():
        blocks = np.zeros((dim, dim), dtype=complex)
        blocks[:half, :half] = (random_dichotomous(half, rng, both=False).matrix
                                if half > 1 else rng.choice([-1, 1]))
        blocks[half:, half:] = (random_dichotomous(dim - half, rng, both=False).matrix
                                if dim - half > 1 else rng.choice([-1, 1]))
        m = u @ blocks @ u.conj().T
        return (m + m.conj().T) / 2

    x1, x3 = in_commutant(), in_commutant()
    return [HermitianObservable(x1, "X1"), HermitianObservable(x2, "X2"),
            HermitianObservable(x3, "X3"), HermitianObservable(x2.copy(), "X4")]
