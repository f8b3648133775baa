"""Exact invariant factors of the p-curvature over F_q(x).

The similarity class of the p-curvature of Y' = AY (or of a scalar
operator through its companion system) is computed either naively in
time linear in p, or through evaluation at a few points of a small
extension field in time quasi-linear in sqrt(p), then reconstructed as
polynomials in X = x^p and T.
"""

from .diffop import (DiffOperator, DiffSystem, companion_of_operator,
                     naive_invariant_factors)
from .fields import ExtensionField, PrimeField, find_irreducible
from .local_eval import invariant_factors_at
from .nilprofile import (FactorizationHypothesis, RankProfile,
                         feasibility_check, profile_from_invariant_factors,
                         sym_power_rank)
from .reconstruct import (ReconParams, effective_params,
                          reconstruct_deterministic, reconstruct_montecarlo,
                          select_params, verify_divisibility_lemma)

__version__ = "0.1.0"

__all__ = [
    "DiffOperator",
    "DiffSystem",
    "ExtensionField",
    "FactorizationHypothesis",
    "PrimeField",
    "RankProfile",
    "ReconParams",
    "companion_of_operator",
    "effective_params",
    "feasibility_check",
    "find_irreducible",
    "invariant_factors_at",
    "naive_invariant_factors",
    "profile_from_invariant_factors",
    "reconstruct_deterministic",
    "reconstruct_montecarlo",
    "select_params",
    "sym_power_rank",
    "verify_divisibility_lemma",
]
