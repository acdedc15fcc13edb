"""
绝对不可约性与坏度模块
"""
from .newton import (
    NewtonPolytope, newton_polytope, gao_edge_criterion, edge_coefficients, edge_badness_bound,
)
from .ruppert import (
    NotSquarefreeError, CharacteristicTooSmall, absolutely_irreducible,
    reduction_is_absolutely_irreducible, ruppert_matrix, ruppert_corank,
    validity_threshold, is_squarefree,
)
from .badness import (
    BadnessReport, BadnessValue, bad_primes, badness_value, badness_threshold,
    scan_bad_primes, plane_curve_badness,
)

__all__ = [
    'NewtonPolytope', 'newton_polytope', 'gao_edge_criterion', 'edge_coefficients',
    'edge_badness_bound', 'NotSquarefreeError', 'CharacteristicTooSmall',
    'absolutely_irreducible', 'reduction_is_absolutely_irreducible', 'ruppert_matrix',
    'ruppert_corank', 'validity_threshold', 'is_squarefree', 'BadnessReport', 'BadnessValue',
    'bad_primes', 'badness_value', 'badness_threshold', 'scan_bad_primes', 'plane_curve_badness',
]
