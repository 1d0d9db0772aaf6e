"""Phase-one simplex for ``A x = b, x >= 0`` feasibility.

Dense tableau, Bland's rule for both entering and leaving variables so the
method terminates on degenerate problems. Sized for a few dozen rows and up
to 2**16 columns.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PIVOT_TOL = 1e-11


@dataclass
class PhaseOneResult:
    feasible: bool
    x: np.ndarray          # primal point (least-residual when infeasible)
    residual: float        # phase-one objective: sum of artificial values
    dual: np.ndarray       # y with A.T @ y <= 0 and b @ y == residual at optimum
    iterations: int


def phase_one(A, b, tol=1e-7, max_iter=100_000) -> PhaseOneResult:
    """Minimise the total artificial slack of ``A x + s = b``.

    The problem is feasible iff the optimum is at most ``tol``. At the optimum
    the simplex multipliers ``y`` satisfy ``A.T @ y <= 0`` and ``b @ y`` equals
    the optimum, so an infeasible answer comes with a Farkas certificate.
    """
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    m, n = A.shape
    flip = np.where(b < 0, -1.0, 1.0)
    A *= flip[:, None]
    b *= flip

    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n:n + m] = np.eye(m)
    T[:m, -1] = b
    # objective row holds reduced costs; costs are 0 on x, 1 on artificials
    T[m, :n] = -A.sum(axis=0)
    T[m, -1] = -b.sum()
    basis = list(range(n, n + m))

    it = 0
    while True:
        neg = np.nonzero(T[m, :-1] < -PIVOT_TOL)[0]
        if neg.size == 0:
            break
        if it >= max_iter:
            raise RuntimeError("phase-one simplex exceeded its iteration limit")
        j = int(neg[0])
        col = T[:m, j]
        rows = np.nonzero(col > PIVOT_TOL)[0]
        if rows.size == 0:
            # unbounded direction cannot occur in phase one; reduced cost is noise
            T[m, j] = 0.0
            continue
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-13 * max(1.0, abs(best))]
        r = int(min(ties, key=lambda k: basis[k]))
        T[r] /= T[r, j]
        others = np.arange(m + 1) != r
        T[others] -= np.outer(T[others, j], T[r])
        basis[r] = j
        it += 1

    x = np.zeros(n)
    for r, var in enumerate(basis):
        if var < n:
            x[var] = max(T[r, -1], 0.0)
    residual = max(-T[m, -1], 0.0)
    # reduced cost of artificial k is 1 - y_k
    y = (1.0 - T[m, n:n + m]) * flip
    return PhaseOneResult(residual <= tol, x, float(residual), y, it)
