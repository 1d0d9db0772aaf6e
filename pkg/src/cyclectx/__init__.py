"""Quantum contextuality on n-cycle scenarios.

Quantum correlation values and CHSH operators, exact classical
(noncontextual) bounds, joint-distribution feasibility, and the
commutator-product test deciding whether four cycle-compatible observables
can violate the 4-cycle inequality.
"""
from .classical import (BoundResult, CorrelationData, FeasibilityResult, jpd_exists,
                        noncontextual_bound, original_bell_check, suppes_zanotti_check)
from .linalg import (HermitianObservable, SpectralDecomposition, commutator, spectral_decomposition,
                     spectral_norm, tensor)
from .quantum import (JointDistribution, QuantumState, Theorem2Verdict, average,
                      chsh_tensor_construction, commutator_product, context_jpd, correlation,
                      full_jpd, gamma_operator, marginal, quantum_value, standard_chsh_observables,
                      theorem2_check)
from .sampler import EmpiricalData, SampleConfig, estimate_scenario, sample_context
from .scenario import (CompatibilityReport, CycleScenario, SignPattern, build_cycle_scenario,
                       validate_compatibility)

__version__ = "0.1.0"

__all__ = [
    "BoundResult",
    "CorrelationData",
    "FeasibilityResult",
    "jpd_exists",
    "noncontextual_bound",
    "original_bell_check",
    "suppes_zanotti_check",
    "HermitianObservable",
    "SpectralDecomposition",
    "commutator",
    "spectral_decomposition",
    "spectral_norm",
    "tensor",
    "JointDistribution",
    "QuantumState",
    "Theorem2Verdict",
    "average",
    "chsh_tensor_construction",
    "commutator_product",
    "context_jpd",
    "correlation",
    "full_jpd",
    "gamma_operator",
    "marginal",
    "quantum_value",
    "standard_chsh_observables",
    "theorem2_check",
    "EmpiricalData",
    "SampleConfig",
    "estimate_scenario",
    "sample_context",
    "CompatibilityReport",
    "CycleScenario",
    "SignPattern",
    "build_cycle_scenario",
    "validate_compatibility",
]
