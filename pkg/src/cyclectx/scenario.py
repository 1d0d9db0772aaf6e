"""n-cycle contextuality scenarios and context compatibility checks.

Observables are indexed from 0 in the Python API. Scenario files, reports
and error messages use 1-based labels.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatchError, NotDichotomousError, ScenarioError
from .linalg import HermitianObservable, commutator, max_norm

COMPATIBILITY_TOL = 1e-9


def cycle_edges(n: int) -> list[tuple[int, int]]:
    """Context pairs ``(i, i+1 mod n)`` of the n-cycle."""
    return [(i, (i + 1) % n) for i in range(n)]


@dataclass(frozen=True)
class SignPattern:
    """One ±1 coefficient per cycle edge."""

    signs: tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if any(s not in (-1, 1) for s in signs):
            raise ScenarioError(f"signs must be +1 or -1, got {self.signs}")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def canonical(cls, n: int = 4) -> "SignPattern":
        """All plus except the closing edge, e.g. (+,+,+,-) for n=4."""
        return cls((1,) * (n - 1) + (-1,))

    @classmethod
    def parse(cls, text: str) -> "SignPattern":
        """Parse ``"+,+,+,-"`` or ``"1,1,1,-1"``."""
        out = []
        for tok in text.split(","):
            tok = tok.strip()
            if tok in ("+", "+1", "1"):
                out.append(1)
            elif tok in ("-", "-1"):
                out.append(-1)
            else:
                raise ScenarioError(f"malformed sign {tok!r} in {text!r}")
        return cls(tuple(out))

    @property
    def n(self) -> int:
        return len(self.signs)

    @property
    def minus_count(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def is_odd(self) -> bool:
        return self.minus_count % 2 == 1

    def __len__(self):
        return len(self.signs)

    def __iter__(self):
        return iter(self.signs)

    def __getitem__(self, i):
        return self.signs[i]

    def __str__(self):
        return ",".join("+" if s > 0 else "-" for s in self.signs)


def as_signs(signs, n=None) -> SignPattern:
    if not isinstance(signs, SignPattern):
        signs = SignPattern.parse(signs) if isinstance(signs, str) else SignPattern(tuple(signs))
    if n is not None and len(signs) != n:
        raise ScenarioError(f"sign pattern has length {len(signs)}, expected {n}")
    return signs


@dataclass(frozen=True)
class CycleScenario:
    observables: tuple[HermitianObservable, ...]

    @property
    def n(self) -> int:
        return len(self.observables)

    @property
    def dim(self) -> int:
        return self.observables[0].dim

    @property
    def contexts(self) -> list[tuple[int, int]]:
        return cycle_edges(self.n)

    def __getitem__(self, i) -> HermitianObservable:
        return self.observables[i]


def build_cycle_scenario(observables: Sequence[HermitianObservable]) -> CycleScenario:
    """Validate the observables and attach the canonical cycle contexts."""
    obs = tuple(observables)
    if len(obs) < 3:
        raise ScenarioError(f"too few observables for a cycle scenario: {len(obs)} < 3")
    dim = obs[0].dim
    for k, o in enumerate(obs, start=1):
        if not isinstance(o, HermitianObservable):
            raise ScenarioError(f"observable {k} is not a HermitianObservable")
        if o.dim != dim:
            raise DimensionMismatchError(
                f"observable {k} has dimension {o.dim}, observable 1 has {dim}")
        if not o.dichotomous:
            raise NotDichotomousError(f"observable {k} ({o.label!r}) is not dichotomous")
    return CycleScenario(obs)


@dataclass(frozen=True)
class CompatibilityReport:
    edges: tuple[tuple[int, int], ...]
    residuals: tuple[float, ...]
    compatible: tuple[bool, ...]
    tolerance: float

    @property
    def overall_ok(self) -> bool:
        return all(self.compatible)

    def failures(self) -> list[tuple[int, int]]:
        return [e for e, ok in zip(self.edges, self.compatible) if not ok]

    def to_dict(self) -> dict:
        return {
            "tolerance": self.tolerance,
            "edges": [
                {"context": [i + 1, j + 1], "residual": r, "compatible": ok}
                for (i, j), r, ok in zip(self.edges, self.residuals, self.compatible)
            ],
            "overall_ok": self.overall_ok,
        }


def commutator_residual(a, b) -> float:
    return max_norm(commutator(a, b))


def validate_compatibility(s: CycleScenario, tolerance=COMPATIBILITY_TOL) -> CompatibilityReport:
    if tolerance < 0:
        raise ValueError("tolerance must be nonnegative")
    edges = tuple(s.contexts)
    residuals = tuple(commutator_residual(s[i], s[j]) for i, j in edges)
    return CompatibilityReport(edges, residuals, tuple(r <= tolerance for r in residuals),
                               float(tolerance))
