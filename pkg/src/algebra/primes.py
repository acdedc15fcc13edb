"""
素数工具：numpy 埃氏筛、区间素数、整数分解
"""
import logging
from typing import Dict, List

import numpy as np
import sympy

logger = logging.getLogger(__name__)


def sieve_mask(n: int) -> np.ndarray:
    """长度 n+1 的布尔数组，mask[k] 表示 k 是否为素数"""
    if n < 1:
        return np.zeros(max(n + 1, 0), dtype=bool)
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, int(n ** 0.5) + 1):
        if mask[p]:
            mask[p * p::p] = False
    return mask


def primes_up_to(n: int) -> List[int]:
    return [int(p) for p in np.nonzero(sieve_mask(n))[0]]


def primes_in_range(lo: int, hi: int) -> List[int]:
    """开闭区间 (lo, hi] 内的素数"""
    if hi <= lo:
        return []
    return [p for p in primes_up_to(hi) if p > lo]


def is_prime(n: int) -> bool:
    return bool(sympy.isprime(n))


def prime_factors(n: int) -> List[int]:
    """|n| 的不同素因子（升序），n = 0 时报错"""
    if n == 0:
        raise ValueError("0 没有有限的素因子集合")
    factors: Dict[int, int] = sympy.factorint(abs(n))
    return sorted(int(p) for p in factors)
