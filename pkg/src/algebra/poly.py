"""
稀疏整系数多元多项式
IntPoly: 指数向量 -> 非零整数 的有限映射，可选模 p（系数取 [0, p) 代表元）
"""
import re
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import sympy

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]

# 零多项式的次数（-∞），与任何实际次数都不同
ZERO_DEGREE = float("-inf")


class PolySyntaxError(ValueError):
    """多项式文本语法错误"""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (位置 {position})")
        self.position = position


class NotPrimeError(ValueError):
    """模数不是素数"""


def glex_key(exps: Monomial) -> Tuple[int, Monomial]:
    """分级字典序的排序键"""
    return (sum(exps), exps)


def require_prime(p: int) -> int:
    if not isinstance(p, int) or p < 2 or not sympy.isprime(p):
        raise NotPrimeError(f"{p} 不是素数")
    return p


def default_varnames(nvars: int) -> List[str]:
    if nvars == 1:
        return ["x"]
    if nvars == 2:
        return ["x", "y"]
    if nvars == 3:
        return ["x", "y", "z"]
    return [f"x{i}" for i in range(nvars)]


def parse_varnames(text: str) -> List[str]:
    names = [v.strip() for v in text.split(",") if v.strip()]
    if not names:
        raise ValueError("变量列表为空")
    if len(set(names)) != len(names):
        raise ValueError(f"变量名重复: {text}")
    for name in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
            raise ValueError(f"非法变量名: {name!r}")
    return names


@dataclass(frozen=True)
class IntPoly:
    """
    稀疏多项式

    terms 按分级字典序降序存储，不含零系数。
    modulus 非空时表示 F_p 上的多项式。
    """
    nvars: int
    terms: Tuple[Tuple[Monomial, int], ...]
    modulus: Optional[int] = None

    # ========== 构造 ==========

    @classmethod
    def from_dict(cls, nvars: int, mapping: Dict[Monomial, int],
                  modulus: Optional[int] = None) -> "IntPoly":
        if nvars <= 0:
            raise ValueError("变量个数必须为正")
        clean: Dict[Monomial, int] = {}
        for exps, coeff in mapping.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"指数向量非法: {exps}")
            c = int(coeff)
            if modulus is not None:
                c %= modulus
            if c:
                clean[exps] = c
        ordered = tuple(sorted(clean.items(), key=lambda item: glex_key(item[0]), reverse=True))
        return cls(nvars, ordered, modulus)

    @classmethod
    def zero(cls, nvars: int, modulus: Optional[int] = None) -> "IntPoly":
        return cls(nvars, (), modulus)

    @classmethod
    def constant(cls, nvars: int, c: int, modulus: Optional[int] = None) -> "IntPoly":
        return cls.from_dict(nvars, {(0,) * nvars: c}, modulus)

    @classmethod
    def variable(cls, nvars: int, index: int, modulus: Optional[int] = None) -> "IntPoly":
        exps = [0] * nvars
        exps[index] = 1
        return cls.from_dict(nvars, {tuple(exps): 1}, modulus)

    @classmethod
    def monomial(cls, exps: Monomial, coeff: int = 1,
                 modulus: Optional[int] = None) -> "IntPoly":
        return cls.from_dict(len(exps), {tuple(exps): coeff}, modulus)

    @classmethod
    def linear_form(cls, coeffs: Sequence[int]) -> "IntPoly":
        n = len(coeffs)
        mapping = {}
        for i, c in enumerate(coeffs):
            exps = [0] * n
            exps[i] = 1
            mapping[tuple(exps)] = c
        return cls.from_dict(n, mapping)

    # ========== 基本属性 ==========

    @cached_property
    def as_dict(self) -> Dict[Monomial, int]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> Union[int, float]:
        if not self.terms:
            return ZERO_DEGREE
        return max(sum(e) for e, _ in self.terms)

    @property
    def num_terms(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e, _ in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    def degree_in(self, var: int) -> Union[int, float]:
        if not self.terms:
            return ZERO_DEGREE
        return max(e[var] for e, _ in self.terms)

    def coeff(self, exps: Monomial) -> int:
        return self.as_dict.get(tuple(exps), 0)

    def leading_term(self) -> Tuple[Monomial, int]:
        if not self.terms:
            raise ValueError("零多项式没有首项")
        return self.terms[0]

    def coeff_norm(self) -> int:
        """‖f‖：系数绝对值的最大值"""
        return max((abs(c) for _, c in self.terms), default=0)

    def content_and_primitive(self) -> Tuple[int, "IntPoly"]:
        """
        返回 (content, 本原部分)

        content 为正，符号留在本原部分上。
        """
        if self.is_zero:
            raise ValueError("零多项式没有 content")
        if self.modulus is not None:
            raise ValueError("content 只对整系数多项式有定义")
        content = reduce(gcd, (abs(c) for _, c in self.terms))
        prim = IntPoly(self.nvars, tuple((e, c // content) for e, c in self.terms))
        return content, prim

    def is_primitive(self) -> bool:
        return not self.is_zero and self.content_and_primitive()[0] == 1

    def degree_part(self, i: int) -> "IntPoly":
        """f_i：总次数恰为 i 的齐次部分"""
        return IntPoly(self.nvars, tuple((e, c) for e, c in self.terms if sum(e) == i),
                       self.modulus)

    def support(self) -> List[Monomial]:
        return [e for e, _ in self.terms]

    # ========== 算术 ==========

    def _check_compatible(self, other: "IntPoly"):
        if self.nvars != other.nvars:
            raise ValueError(f"变量个数不一致: {self.nvars} vs {other.nvars}")
        if self.modulus != other.modulus:
            raise ValueError(f"模数不一致: {self.modulus} vs {other.modulus}")

    def _coerce(self, other) -> "IntPoly":
        if isinstance(other, IntPoly):
            self._check_compatible(other)
            return other
        if isinstance(other, int):
            return IntPoly.constant(self.nvars, other, self.modulus)
        raise TypeError(f"不支持的运算对象: {type(other).__name__}")

    def __add__(self, other) -> "IntPoly":
        other = self._coerce(other)
        acc = dict(self.as_dict)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return IntPoly.from_dict(self.nvars, acc, self.modulus)

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly.from_dict(self.nvars, {e: -c for e, c in self.terms}, self.modulus)

    def __sub__(self, other) -> "IntPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "IntPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly.from_dict(self.nvars, {e: c * other for e, c in self.terms},
                                     self.modulus)
        other = self._coerce(other)
        acc: Dict[Monomial, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return IntPoly.from_dict(self.nvars, acc, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("指数必须是非负整数")
        result = IntPoly.constant(self.nvars, 1, self.modulus)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self, var: int) -> "IntPoly":
        acc = {}
        for e, c in self.terms:
            if e[var] == 0:
                continue
            new = list(e)
            new[var] -= 1
            acc[tuple(new)] = c * e[var]
        return IntPoly.from_dict(self.nvars, acc, self.modulus)

    def gradient(self) -> List["IntPoly"]:
        return [self.derivative(i) for i in range(self.nvars)]

    # ========== 求值与代换 ==========

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.nvars:
            raise ValueError(f"点的维数 {len(point)} 与变量个数 {self.nvars} 不符")
        total = 0
        for e, c in self.terms:
            term = c
            for v, k in zip(point, e):
                if k:
                    term *= v ** k
            total += term
        return total % self.modulus if self.modulus is not None else total

    def evaluator(self) -> Callable[[Sequence[int]], int]:
        """返回针对大量求值优化的闭包（按变量缓存幂次）"""
        terms = [(c, [(i, k) for i, k in enumerate(e) if k]) for e, c in self.terms]
        modulus = self.modulus

        def _eval(point: Sequence[int]) -> int:
            total = 0
            for c, factors in terms:
                term = c
                for i, k in factors:
                    term *= point[i] ** k
                total += term
            return total % modulus if modulus is not None else total

        return _eval

    def compose(self, substitutions: Sequence["IntPoly"]) -> "IntPoly":
        """f(s_1, ..., s_n)，s_i 为同一环中的多项式"""
        if len(substitutions) != self.nvars:
            raise ValueError("代换个数与变量个数不符")
        target_nvars = substitutions[0].nvars
        cache: Dict[Tuple[int, int], IntPoly] = {}

        def power(i: int, k: int) -> IntPoly:
            key = (i, k)
            if key not in cache:
                cache[key] = substitutions[i] ** k
            return cache[key]

        result = IntPoly.zero(target_nvars, self.modulus)
        for e, c in self.terms:
            term = IntPoly.constant(target_nvars, c, self.modulus)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def homogenize(self, index: Optional[int] = None) -> "IntPoly":
        """插入齐次化变量（默认放在最后）"""
        if self.is_zero:
            return IntPoly.zero(self.nvars + 1, self.modulus)
        d = self.degree
        pos = self.nvars if index is None else index
        acc = {}
        for e, c in self.terms:
            new = list(e)
            new.insert(pos, d - sum(e))
            acc[tuple(new)] = c
        return IntPoly.from_dict(self.nvars + 1, acc, self.modulus)

    def dehomogenize(self, index: int) -> "IntPoly":
        """令第 index 个变量为 1"""
        acc: Dict[Monomial, int] = {}
        for e, c in self.terms:
            new = e[:index] + e[index + 1:]
            acc[new] = acc.get(new, 0) + c
        return IntPoly.from_dict(self.nvars - 1, acc, self.modulus)

    def reduce_mod(self, p: int) -> "IntPoly":
        """逐系数模 p 约化，系数为零的项被丢弃"""
        require_prime(p)
        if self.modulus is not None and self.modulus != p:
            raise ValueError(f"已在 F_{self.modulus} 上，无法约化到 F_{p}")
        return IntPoly.from_dict(self.nvars, dict(self.terms), p)

    def lift(self) -> "IntPoly":
        """F_p 多项式取对称代表元提升回整系数"""
        if self.modulus is None:
            return self
        p = self.modulus
        return IntPoly.from_dict(self.nvars, {e: (c if c <= p // 2 else c - p)
                                              for e, c in self.terms})

    # ========== 整除 ==========

    def _field_inverse(self, c):
        if self.modulus is None:
            return Fraction(1, 1) / c
        return pow(int(c), -1, self.modulus)

    def divide(self, divisor: "IntPoly") -> Optional[Dict[Monomial, Union[Fraction, int]]]:
        """
        在 Q（或 F_p）上做单除式的多元带余除法

        Returns:
            整除时返回商的系数映射，否则 None
        """
        self._check_compatible(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("除以零多项式")
        lead_e, lead_c = divisor.leading_term()
        inv = self._field_inverse(lead_c)
        p = self.modulus
        remainder: Dict[Monomial, Union[Fraction, int]] = {
            e: (Fraction(c) if p is None else c) for e, c in self.terms}
        quotient: Dict[Monomial, Union[Fraction, int]] = {}
        while remainder:
            top = max(remainder, key=glex_key)
            if any(a < b for a, b in zip(top, lead_e)):
                return None
            shift = tuple(a - b for a, b in zip(top, lead_e))
            factor = remainder[top] * inv
            if p is not None:
                factor %= p
            quotient[shift] = quotient.get(shift, 0) + factor
            for e, c in divisor.terms:
                m = tuple(a + b for a, b in zip(e, shift))
                value = remainder.get(m, 0) - factor * c
                if p is not None:
                    value %= p
                if value:
                    remainder[m] = value
                else:
                    remainder.pop(m, None)
        return quotient

    def is_divisible_by(self, divisor: "IntPoly") -> bool:
        return self.divide(divisor) is not None

    def exact_quotient(self, divisor: "IntPoly") -> Optional["IntPoly"]:
        """整除且商为整系数时返回商"""
        quotient = self.divide(divisor)
        if quotient is None:
            return None
        if self.modulus is None:
            if any(Fraction(c).denominator != 1 for c in quotient.values()):
                return None
            return IntPoly.from_dict(self.nvars, {e: int(c) for e, c in quotient.items()})
        return IntPoly.from_dict(self.nvars, quotient, self.modulus)

    # ========== sympy 互转 ==========

    def sympy_gens(self, names: Optional[Sequence[str]] = None):
        names = list(names) if names else [f"_v{i}" for i in range(self.nvars)]
        return tuple(sympy.Symbol(n) for n in names)

    def to_sympy(self, gens=None) -> sympy.Poly:
        gens = gens if gens is not None else self.sympy_gens()
        rep = {e: c for e, c in self.terms} or {(0,) * self.nvars: 0}
        if self.modulus is not None:
            return sympy.Poly.from_dict(rep, *gens, modulus=self.modulus)
        return sympy.Poly.from_dict(rep, *gens, domain=sympy.ZZ)

    @classmethod
    def from_sympy(cls, poly: sympy.Poly, modulus: Optional[int] = None) -> "IntPoly":
        nvars = len(poly.gens)
        mapping = {}
        for monom, coeff in poly.terms():
            if not sympy.sympify(coeff).is_Integer:
                raise ValueError(f"系数不是整数: {coeff}")
            mapping[tuple(monom)] = int(coeff)
        return cls.from_dict(nvars, mapping, modulus)

    # ========== 打印 ==========

    def to_text(self, varnames: Optional[Sequence[str]] = None) -> str:
        return poly_print(self, varnames)

    def __str__(self) -> str:
        return poly_print(self)

    def __repr__(self) -> str:
        suffix = f", mod {self.modulus}" if self.modulus is not None else ""
        return f"IntPoly({poly_print(self)!r}{suffix})"


# ========== 解析器 ==========

_TOKEN_RE = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.)")
_SPACE_RE = re.compile(r"\s*")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        pos = _SPACE_RE.match(text, pos).end()
        if pos >= len(text):
            break
        match = _TOKEN_RE.match(text, pos)
        number, name, other = match.groups()
        start = pos
        if number is not None:
            tokens.append(("INT", number, start))
        elif name is not None:
            tokens.append(("NAME", name, start))
        elif other is not None:
            if other not in "+-*^()":
                raise PolySyntaxError(f"非法字符 {other!r}", start)
            tokens.append(("OP", other, start))
        pos = match.end()
    tokens.append(("END", "", len(text)))
    return tokens


class _Parser:
    """递归下降：expr := term (('+'|'-') term)*, term := unary ('*' unary)*"""

    def __init__(self, text: str, varnames: Sequence[str]):
        self.tokens = _tokenize(text)
        self.index = 0
        self.varnames = list(varnames)
        self.nvars = len(self.varnames)

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.index]

    def take(self) -> Tuple[str, str, int]:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.take()
        if kind != "OP" or text != value:
            raise PolySyntaxError(f"期望 {value!r}，得到 {text or '结尾'!r}", pos)

    def parse(self) -> IntPoly:
        result = self.expr()
        kind, text, pos = self.peek()
        if kind != "END":
            if kind in ("INT", "NAME") or text == "(":
                raise PolySyntaxError(f"不允许隐式乘法，请在 {text!r} 前加 '*'", pos)
            raise PolySyntaxError(f"意外的符号 {text!r}", pos)
        return result

    def expr(self) -> IntPoly:
        result = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "OP" and text in "+-":
                self.take()
                rhs = self.term()
                result = result + rhs if text == "+" else result - rhs
            else:
                return result

    def term(self) -> IntPoly:
        result = self.unary()
        while True:
            kind, text, _ = self.peek()
            if kind == "OP" and text == "*":
                self.take()
                result = result * self.unary()
            else:
                return result

    def unary(self) -> IntPoly:
        kind, text, _ = self.peek()
        if kind == "OP" and text in "+-":
            self.take()
            inner = self.unary()
            return -inner if text == "-" else inner
        return self.power()

    def power(self) -> IntPoly:
        base = self.atom()
        kind, text, _ = self.peek()
        if kind == "OP" and text == "^":
            self.take()
            kind, value, pos = self.take()
            if kind != "INT":
                raise PolySyntaxError("指数必须是非负整数字面量", pos)
            return base ** int(value)
        return base

    def atom(self) -> IntPoly:
        kind, text, pos = self.take()
        if kind == "INT":
            return IntPoly.constant(self.nvars, int(text))
        if kind == "NAME":
            if text not in self.varnames:
                raise PolySyntaxError(f"未知变量 {text!r}", pos)
            return IntPoly.variable(self.nvars, self.varnames.index(text))
        if kind == "OP" and text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise PolySyntaxError(f"意外的符号 {text or '结尾'!r}", pos)


def poly_parse(text: str, varnames: Sequence[str]) -> IntPoly:
    """
    解析多项式文本

    Args:
        text: 例如 "x^2 + y^2 - 25"
        varnames: 变量名列表，顺序决定指数向量的分量

    Raises:
        PolySyntaxError: 语法错误或未知变量
    """
    if not varnames:
        raise ValueError("变量列表为空")
    return _Parser(text, varnames).parse()


def poly_print(f: IntPoly, varnames: Optional[Sequence[str]] = None) -> str:
    """按分级字典序降序打印，例如 x^3 + x*y - 25"""
    names = list(varnames) if varnames else default_varnames(f.nvars)
    if f.is_zero:
        return "0"
    parts: List[str] = []
    for idx, (exps, coeff) in enumerate(f.terms):
        factors = []
        for name, k in zip(names, exps):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        magnitude = abs(coeff)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        negative = coeff < 0
        if idx == 0:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)


def content_and_primitive(f: IntPoly) -> Tuple[int, IntPoly]:
    return f.content_and_primitive()


def coeff_norm(f: IntPoly) -> int:
    return f.coeff_norm()


def degree_part(f: IntPoly, i: int) -> IntPoly:
    return f.degree_part(i)


def reduce_mod_p(f: IntPoly, p: int) -> IntPoly:
    return f.reduce_mod(p)


def monomials_of_degree(nvars: int, degree: int) -> List[Monomial]:
    """给定次数的全部单项式，分级字典序降序"""
    result: List[Monomial] = []

    def build(prefix: List[int], remaining: int, slots: int):
        if slots == 1:
            result.append(tuple(prefix + [remaining]))
            return
        for k in range(remaining, -1, -1):
            build(prefix + [k], remaining - k, slots - 1)

    if degree < 0:
        return []
    build([], degree, nvars)
    return result


def monomials_up_to(nvars: int, degree: int) -> List[Monomial]:
    """次数不超过 degree 的全部单项式，分级字典序降序"""
    result: List[Monomial] = []
    for k in range(degree, -1, -1):
        result.extend(monomials_of_degree(nvars, k))
    return result


def evaluate_monomial(exps: Monomial, point: Iterable[int]) -> int:
    value = 1
    for v, k in zip(point, exps):
        if k:
            value *= v ** k
    return value
