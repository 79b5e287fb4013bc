"""Spinor (Clifford) two-qubit algebra versus local hidden-variable models for CHSH."""
from .bipartite import (TSIRELSON, ChshSettings, born_probabilities, chsh_expectation, chsh_operator,
                        chsh_operator_norm, correlation, kron, sigma_a, sigma_b, singlet,
                        tsirelson_multistart, tsirelson_search)
from .clifford import Bivector, Direction, Multivector, bivector_from_direction, geometric_product, grade_project
from .errors import DomainError, InvariantError
from .lhv import (Behavior, ConvexDecomposition, CorrelationVector, DeterministicStrategy, chsh_value,
                  enumerate_strategies, facet_check, lp_membership, lp_membership_behavior,
                  non_embeddability_certificate)
from .montecarlo import EstimationReport, simulate_lhv, simulate_quantum
from .spinor import anticommutator, eigenvalues_2x2, rho, spin_operator

__version__ = "0.1.0"
