"""
行列式方法模块
"""
from .stalk import (
    StalkProfile, WeightReport, stalk_hilbert, tangent_cone_hilbert, weight_partial_sum,
    weight_sequence,
)
from .padic import (
    DeterminantInstance, InstanceError, PadicReport, ReductionStats, multiplicity,
    random_determinant_instance, reduction_stats, verify_padic_divisibility,
)
from .auxpoly import (
    AuxCertificate, CertificateCheck, DegreeCapExceeded, aux_polynomial, bezout_check,
    is_irreducible_over_q, validate_certificate,
)
from .bounds import (
    ChebyshevReport, MertensReport, affine_count_shape, affine_curve_shape,
    affine_degree_formula, chebyshev_check, edge_count_shape, mertens_report,
    projective_curve_shape, walsh_degree_formula,
)

__all__ = [
    'StalkProfile', 'WeightReport', 'stalk_hilbert', 'tangent_cone_hilbert',
    'weight_partial_sum', 'weight_sequence', 'DeterminantInstance', 'InstanceError',
    'PadicReport', 'ReductionStats', 'multiplicity', 'random_determinant_instance',
    'reduction_stats', 'verify_padic_divisibility', 'AuxCertificate', 'CertificateCheck',
    'DegreeCapExceeded', 'aux_polynomial', 'bezout_check', 'is_irreducible_over_q',
    'validate_certificate', 'ChebyshevReport', 'MertensReport', 'affine_count_shape',
    'affine_curve_shape', 'affine_degree_formula', 'chebyshev_check', 'edge_count_shape',
    'mertens_report', 'projective_curve_shape', 'walsh_degree_formula',
]
