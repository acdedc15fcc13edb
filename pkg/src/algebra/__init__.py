"""
代数核心模块
"""
from .poly import (
    IntPoly, PolySyntaxError, NotPrimeError, poly_parse, poly_print,
    content_and_primitive, coeff_norm, degree_part, reduce_mod_p, parse_varnames,
)
from .linalg import (
    PrimePolyMatrix, RationalMatrix, rank_mod_p, nullspace_rational,
    rank_rational, solve_rational, integer_det,
)
from .primes import primes_up_to, prime_factors, is_prime

__all__ = [
    'IntPoly', 'PolySyntaxError', 'NotPrimeError', 'poly_parse', 'poly_print',
    'content_and_primitive', 'coeff_norm', 'degree_part', 'reduce_mod_p', 'parse_varnames',
    'PrimePolyMatrix', 'RationalMatrix', 'rank_mod_p', 'nullspace_rational',
    'rank_rational', 'solve_rational', 'integer_det',
    'primes_up_to', 'prime_factors', 'is_prime',
]
