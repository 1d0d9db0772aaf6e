"""Classical side: noncontextual bounds by exhaustive enumeration, joint
distribution feasibility, and the three-variable and perfect-correlation
Bell-type checks.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import EnumerationLimitError, InconsistentDataError
from .scenario import SignPattern, as_signs, cycle_edges
from .simplex import phase_one

MAX_BOUND_N = 24
MAX_JPD_N = 16
FEASIBILITY_TOL = 1e-7
PRECISION_TOL = 1e-6
RANGE_SLACK = 1e-9
_CHUNK = 1 << 20


@dataclass(frozen=True)
class BoundResult:
    bound: int
    assignment: tuple[int, ...]
    signs: SignPattern

    def to_dict(self) -> dict:
        return {"n": len(self.assignment), "signs": str(self.signs), "bound": self.bound,
                "assignment": list(self.assignment)}


def cycle_expression(signs, assignment) -> int:
    """``sum_i signs[i] * a[i] * a[i+1]`` with indices mod n."""
    n = len(assignment)
    return sum(int(s) * int(assignment[i]) * int(assignment[(i + 1) % n])
               for s, i in zip(signs, range(n)))


def index_to_assignment(idx: int, n: int) -> tuple[int, ...]:
    """Bit ``i`` of ``idx`` set means ``a_i = -1``."""
    return tuple(-1 if (idx >> i) & 1 else 1 for i in range(n))


def noncontextual_bound(n: int, signs) -> BoundResult:
    """Maximum of the signed cycle expression over all ±1 assignments.

    Integer arithmetic throughout. The edge term ``a_i a_{i+1}`` is
    ``1 - 2 [bit_i != bit_{i+1}]`` in the bit encoding of the assignment index.
    Ties go to the smallest index.
    """
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    if n > MAX_BOUND_N:
        raise EnumerationLimitError(f"n = {n} exceeds the enumeration cap {MAX_BOUND_N}")
    signs = as_signs(signs, n)
    gam = np.array(signs.signs, dtype=np.int32)
    base = int(gam.sum())
    best_val, best_idx = None, None
    total = 1 << n
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int32)
        # bit i of diff is set where a_i != a_{i+1}
        diff = idx ^ ((idx >> 1) | ((idx & 1) << (n - 1)))
        val = np.full(idx.shape, base, dtype=np.int32)
        for i in range(n):
            val -= (2 * gam[i]) * ((diff >> i) & 1)
        k = int(np.argmax(val))
        if best_val is None or val[k] > best_val:
            best_val, best_idx = int(val[k]), int(idx[k])
    return BoundResult(best_val, index_to_assignment(best_idx, n), signs)


def odd_sign_patterns(n: int):
    for signs in itertools.product((1, -1), repeat=n):
        if signs.count(-1) % 2 == 1:
            yield SignPattern(signs)


@dataclass
class CorrelationData:
    """Averages and context correlations of an n-cycle.

    ``averages[i]`` may be ``None`` (unconstrained). ``correlations`` maps a
    0-based edge ``(i, j)`` to its value; either orientation is accepted and
    missing edges are unconstrained.
    """

    n: int
    averages: list = field(default_factory=list)
    correlations: dict = field(default_factory=dict)
    average_errors: Optional[list] = None
    correlation_errors: Optional[dict] = None

    def __post_init__(self):
        if not self.averages:
            self.averages = [None] * self.n
        if len(self.averages) != self.n:
            raise InconsistentDataError(f"{len(self.averages)} averages for n = {self.n}")
        edges = {frozenset(e): e for e in cycle_edges(self.n)}
        corr = {}
        for key, v in dict(self.correlations).items():
            e = edges.get(frozenset(key))
            if e is None:
                raise InconsistentDataError(f"pair {key} is not a context of the {self.n}-cycle")
            if v is not None:
                corr[e] = float(v)
        self.correlations = corr
        for label, v in self.entries():
            if abs(v) > 1 + RANGE_SLACK:
                raise InconsistentDataError(f"{label} = {v} lies outside [-1, 1]")

    @classmethod
    def from_cycle(cls, correlations: Sequence[float], averages=None) -> "CorrelationData":
        """Correlations listed in cycle order ``<X1X2>, <X2X3>, ..., <XnX1>``."""
        n = len(correlations)
        return cls(n, list(averages) if averages is not None else [],
                   dict(zip(cycle_edges(n), correlations)))

    def entries(self):
        for i, a in enumerate(self.averages):
            if a is not None:
                yield f"<X{i + 1}>", float(a)
        for (i, j), c in self.correlations.items():
            yield f"<X{i + 1}X{j + 1}>", c

    def correlation(self, i, j):
        return self.correlations.get((i, j), self.correlations.get((j, i)))

    def cycle_vector(self):
        return [self.correlation(i, j) for i, j in cycle_edges(self.n)]

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "averages": list(self.averages),
            "correlations": [{"context": [i + 1, j + 1], "value": self.correlation(i, j)}
                             for i, j in cycle_edges(self.n)],
        }
        if self.average_errors is not None:
            out["average_errors"] = list(self.average_errors)
        if self.correlation_errors is not None:
            out["correlation_errors"] = [self.correlation_errors.get(e)
                                         for e in cycle_edges(self.n)]
        return out


@dataclass(frozen=True)
class InfeasibilityCertificate:
    """A linear inequality ``sum coef * moment <= bound`` valid for every
    classical model and violated by the data (``value > bound``)."""

    coefficients: dict
    bound: float
    value: float

    def describe(self) -> str:
        terms = " ".join(f"{c:+.6g}*{k}" for k, c in self.coefficients.items())
        return f"{terms} <= {self.bound:.6g} (data gives {self.value:.6g})"


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: Optional[dict] = None
    certificate: Optional[InfeasibilityCertificate] = None
    residual: float = 0.0

    def to_dict(self) -> dict:
        out = {"feasible": self.feasible, "residual": self.residual}
        if self.witness is not None:
            out["witness"] = [{"assignment": list(k), "probability": p}
                              for k, p in self.witness.items()]
        if self.certificate is not None:
            out["certificate"] = {"coefficients": self.certificate.coefficients,
                                  "bound": self.certificate.bound,
                                  "value": self.certificate.value,
                                  "description": self.certificate.describe()}
        return out


def _atoms(n):
    idx = np.arange(1 << n)
    return np.where((idx[:, None] >> np.arange(n)) & 1, -1, 1)


def jpd_exists(n: int, data: CorrelationData, tol=FEASIBILITY_TOL) -> FeasibilityResult:
    """Is there a distribution over ±1 assignments reproducing ``data``?"""
    if n > MAX_JPD_N:
        raise EnumerationLimitError(f"n = {n} exceeds the feasibility cap {MAX_JPD_N}")
    if data.n != n:
        raise InconsistentDataError(f"data describes n = {data.n}, expected {n}")
    atoms = _atoms(n)
    rows, rhs, labels = [np.ones(len(atoms))], [1.0], [None]
    for i, a in enumerate(data.averages):
        if a is not None:
            rows.append(atoms[:, i])
            rhs.append(float(a))
            labels.append(f"<X{i + 1}>")
    for (i, j) in cycle_edges(n):
        c = data.correlation(i, j)
        if c is not None:
            rows.append(atoms[:, i] * atoms[:, j])
            rhs.append(c)
            labels.append(f"<X{i + 1}X{j + 1}>")
    A = np.array(rows, dtype=float)
    b = np.array(rhs)
    res = phase_one(A, b, tol=tol)
    if res.feasible:
        p = res.x / res.x.sum()
        if all(a is None for a in data.averages):
            # correlations are flip-invariant; report the flip-symmetric witness
            p = (p + p[::-1]) / 2
        witness = {tuple(int(v) for v in atoms[k]): float(p[k]) for k in np.nonzero(p > 0)[0]}
        return FeasibilityResult(True, witness=witness, residual=abs(res.residual))
    # y.A_j <= 0 for every atom: sum_k y_k m_k <= -y_0 classically
    y = res.dual
    scale = np.max(np.abs(y[1:])) if len(y) > 1 and np.max(np.abs(y[1:])) > 0 else 1.0
    coef = {lab: float(v / scale) for lab, v in zip(labels[1:], y[1:])}
    bound = float(-y[0] / scale)
    value = float(np.dot(y[1:], b[1:]) / scale)
    return FeasibilityResult(False, certificate=InfeasibilityCertificate(coef, bound, value),
                             residual=res.residual)


def _check_range(**values):
    for k, v in values.items():
        if not -1 - RANGE_SLACK <= v <= 1 + RANGE_SLACK:
            raise InconsistentDataError(f"{k} = {v} lies outside [-1, 1]")


@dataclass(frozen=True)
class InequalityCheck:
    label: str
    lhs: float
    bound: float

    @property
    def satisfied(self) -> bool:
        return self.lhs <= self.bound + RANGE_SLACK

    def to_dict(self) -> dict:
        return {"inequality": self.label, "lhs": self.lhs, "bound": self.bound,
                "satisfied": self.satisfied}


@dataclass(frozen=True)
class SuppesZanottiReport:
    primary: InequalityCheck
    orientations: tuple[InequalityCheck, ...]

    @property
    def lhs(self) -> float:
        return self.primary.lhs

    @property
    def satisfied(self) -> bool:
        return self.primary.satisfied

    @property
    def jpd_criterion(self) -> bool:
        """All four orientations hold: exactly when a joint distribution exists."""
        return all(o.satisfied for o in self.orientations)

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "satisfied": self.satisfied,
                "jpd_criterion": self.jpd_criterion,
                "orientations": [o.to_dict() for o in self.orientations]}


def suppes_zanotti_check(c12: float, c23: float, c13: float) -> SuppesZanottiReport:
    """``<X1X2> - <X2X3> + <X1X3> <= 1`` plus the other odd sign orientations."""
    _check_range(c12=c12, c23=c23, c13=c13)
    checks = []
    for s in ((1, -1, 1), (-1, 1, 1), (1, 1, -1), (-1, -1, -1)):
        lhs = s[0] * c12 + s[1] * c23 + s[2] * c13
        label = "".join(f"{'+' if si > 0 else '-'}{t}" for si, t in
                        zip(s, ("<X1X2>", "<X2X3>", "<X1X3>"))).lstrip("+")
        checks.append(InequalityCheck(label, float(lhs), 1.0))
    return SuppesZanottiReport(checks[0], tuple(checks))


@dataclass(frozen=True)
class OriginalBellReport:
    precondition_met: bool
    c23: float
    check: Optional[InequalityCheck]

    @property
    def lhs(self):
        return None if self.check is None else self.check.lhs

    @property
    def satisfied(self):
        return None if self.check is None else self.check.satisfied

    @property
    def status(self) -> str:
        if not self.precondition_met:
            return "precondition unmet"
        return "satisfied" if self.satisfied else "violated"

    def to_dict(self) -> dict:
        return {"precondition_met": self.precondition_met, "c23": self.c23,
                "status": self.status, "lhs": self.lhs, "satisfied": self.satisfied}


def original_bell_check(c12: float, c34: float, c14: float, c23: float,
                        precision=PRECISION_TOL) -> OriginalBellReport:
    """``<X1X2> - <X3X4> + <X1X4> <= 1``, valid only when ``<X2X3> = 1``."""
    _check_range(c12=c12, c34=c34, c14=c14, c23=c23)
    if abs(c23 - 1.0) > precision:
        return OriginalBellReport(False, float(c23), None)
    lhs = c12 - c34 + c14
    return OriginalBellReport(True, float(c23),
                              InequalityCheck("<X1X2>-<X3X4>+<X1X4>", float(lhs), 1.0))


def original_bell_classical_max() -> tuple[int, tuple[int, ...]]:
    """Brute-force maximum of ``a1a2 - a3a4 + a1a4`` over assignments with ``a2 = a3``."""
    best = None
    for a in itertools.product((1, -1), repeat=4):
        if a[1] != a[2]:
            continue
        v = a[0] * a[1] - a[2] * a[3] + a[0] * a[3]
        if best is None or v > best[0]:
            best = (v, a)
    return best


def deterministic_data(assignment: Sequence[int]) -> CorrelationData:
    """Averages and correlations produced by one fixed ±1 assignment."""
    n = len(assignment)
    return CorrelationData(n, [float(a) for a in assignment],
                           {(i, j): float(assignment[i] * assignment[j])
                            for i, j in cycle_edges(n)})

