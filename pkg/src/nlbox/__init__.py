"""Verification toolkit for maximally nonlocal quantum boxes.

The package reconstructs a family of sixteen three-setting, four-outcome
bipartite Bell expressions with deterministic bound 7 and algebraic bound
9, the sixteen Bell-state products that each reach 9 on exactly one
expression, and the entanglement-swapping protocol that distributes those
products between parties whose systems never interacted.  Everything is
checked by exact computation: integer enumeration for the deterministic
bound, fraction-free integer ranks for facet certificates, dense complex
algebra for the quantum values, and seeded sampling for the simulated
runs.
"""

from .inequalities import beta_behavior, beta_quantum, matched_state
from .polytope import facet_check, lhv_bound, ns_bound
from .sampler import estimate_beta, sample_events, sort_events
from .states import BellLabel, eight_qubit_initial, four_qubit_product
from .swap import class_map, premeasurement_marginal

__all__ = [
    "BellLabel",
    "beta_behavior",
    "beta_quantum",
    "class_map",
    "eight_qubit_initial",
    "estimate_beta",
    "facet_check",
    "four_qubit_product",
    "lhv_bound",
    "matched_state",
    "ns_bound",
    "premeasurement_marginal",
    "sample_events",
    "sort_events",
]

__version__ = "0.1.0"
