"""
下界见证曲线模块
"""
from .curves import (
    WitnessCurve, LowerBoundReport, DeterminantCheck, HigherSpotCheck, build_witness,
    kronecker_vandermonde_det_check, spot_check_higher, verify_affine_lower_bound,
    verify_grid, verify_projective_lower_bound, witness_height,
)

__all__ = [
    'WitnessCurve', 'LowerBoundReport', 'DeterminantCheck', 'HigherSpotCheck', 'build_witness',
    'kronecker_vandermonde_det_check', 'spot_check_higher', 'verify_affine_lower_bound',
    'verify_grid', 'verify_projective_lower_bound', 'witness_height',
]
