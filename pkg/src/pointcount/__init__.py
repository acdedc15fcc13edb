"""
点计数模块
"""
from .points import AffinePoint, ProjPoint, height
from .counting import (
    CountResult, WorkLimitExceeded, enumerate_affine, enumerate_projective,
    schwarz_zippel_bound, check_schwarz_zippel, find_point_off_variety,
)

__all__ = [
    'AffinePoint', 'ProjPoint', 'height', 'CountResult', 'WorkLimitExceeded',
    'enumerate_affine', 'enumerate_projective', 'schwarz_zippel_bound',
    'check_schwarz_zippel', 'find_point_off_variety',
]
