"""
点与高度
"""
from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Iterator, List, Sequence, Tuple


@dataclass(frozen=True)
class AffinePoint:
    """整点"""
    coords: Tuple[int, ...]

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def sup_norm(self) -> int:
        return max((abs(c) for c in self.coords), default=0)

    def to_list(self) -> List[int]:
        return list(self.coords)


@dataclass(frozen=True)
class ProjPoint:
    """
    射影点的规范代表元

    坐标 gcd 为 1，第一个非零坐标为正。
    """
    coords: Tuple[int, ...]

    def __post_init__(self):
        if not any(self.coords):
            raise ValueError("射影点坐标不能全为零")
        if gcd(*self.coords) != 1:
            raise ValueError(f"坐标不是本原的: {self.coords}")
        if next(c for c in self.coords if c) < 0:
            raise ValueError(f"第一个非零坐标必须为正: {self.coords}")

    @classmethod
    def canonical(cls, coords: Sequence[int]) -> "ProjPoint":
        coords = tuple(int(c) for c in coords)
        if not any(coords):
            raise ValueError("射影点坐标不能全为零")
        g = gcd(*coords)
        lead = next(c for c in coords if c)
        sign = 1 if lead > 0 else -1
        return cls(tuple(sign * c // g for c in coords))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    @property
    def height(self) -> int:
        return max(abs(c) for c in self.coords)

    def to_list(self) -> List[int]:
        return list(self.coords)


def height(P: ProjPoint) -> int:
    """H(P) = max |x_i|"""
    return P.height


def shell_sort_key(vec: Sequence[int]):
    """同一范数壳内的固定顺序：非零分量少者优先，靠前分量非零优先，正号优先"""
    return (
        sum(1 for v in vec if v),
        tuple(v == 0 for v in vec),
        tuple(v < 0 for v in vec),
        tuple(abs(v) for v in vec),
    )


def shell_vectors(r: int, t: int) -> List[Tuple[int, ...]]:
    """max|x_i| 恰为 t 的全部 r 维整数向量（按 shell_sort_key 排序）"""
    if t == 0:
        return [(0,) * r]
    values = range(-t, t + 1)
    shell = [v for v in product(values, repeat=r) if max(abs(x) for x in v) == t]
    shell.sort(key=shell_sort_key)
    return shell


def vectors_by_norm(r: int, cap: int) -> Iterator[Tuple[int, ...]]:
    """按范数壳 0, 1, ..., cap 依次产出向量"""
    for t in range(cap + 1):
        yield from shell_vectors(r, t)
