"""
投影与线性几何模块
"""
from .linear import LinearSystem, pluecker, small_violating_solution
from .projection import (
    AffineReduction, CountRelation, PointAudit, PreconditionError, ProjectedCurve,
    ProjectionError, ProjectionSetup, SpaceCurve, affine_reduce_curve, center_height_cap,
    find_projection_center, make_setup, project_point, projective_count_relation,
)
from .normalize import Normalization, normalize_leading_coeff, shifted_polynomial

__all__ = [
    'LinearSystem', 'pluecker', 'small_violating_solution', 'AffineReduction',
    'CountRelation', 'PointAudit', 'PreconditionError', 'ProjectedCurve', 'ProjectionError',
    'ProjectionSetup', 'SpaceCurve', 'affine_reduce_curve', 'center_height_cap',
    'find_projection_center', 'make_setup', 'project_point', 'projective_count_relation',
    'Normalization', 'normalize_leading_coeff', 'shifted_polynomial',
]
