"""分圆域 Q(ζ_m) 上的精确算术

元素用 φ(m) 个有理系数表示，基底为 1, ζ, …, ζ^{φ(m)-1}，
并对第 m 个分圆多项式取模，因此表示唯一。
"""
import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np
from sympy import Poly, cyclotomic_poly, symbols, totient

Number = Union[int, Fraction]

_x = symbols("x")


@lru_cache(maxsize=None)
def reduction_table(m: int) -> tuple[tuple[int, ...], ...]:
    """ζ_m^k (k = 0..m-1) 在幂基下的整数坐标

    Args:
        m: 单位根阶

    Returns:
        长度为 m 的元组，每项长度为 φ(m)
    """
    if m < 1:
        raise ValueError(f"root order must be positive, got {m}")
    phi = int(totient(m))
    # Φ_m 首一，x^φ = -Σ c_i x^i
    coeffs = [int(c) for c in reversed(Poly(cyclotomic_poly(m, _x), _x).all_coeffs())]
    rows = []
    vec = [1] + [0] * (phi - 1)
    for _ in range(m):
        rows.append(tuple(vec))
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            vec = [v - top * c for v, c in zip(vec, coeffs[:phi])]
    return tuple(rows)


@lru_cache(maxsize=None)
def reduction_matrix(m: int) -> np.ndarray:
    """reduction_table 的 numpy 形式，用于批量把指数直方图转换为坐标"""
    table = np.array(reduction_table(m), dtype=np.int64)
    table.setflags(write=False)
    return table


def _reduce(m: int, by_exponent: Sequence[Number]) -> tuple[Fraction, ...]:
    table = reduction_table(m)
    phi = len(table[0])
    out = [Fraction(0)] * phi
    for k, a in enumerate(by_exponent):
        if a:
            row = table[k % m]
            for i in range(phi):
                if row[i]:
                    out[i] += a * row[i]
    return tuple(out)


class Cyclotomic:
    """Q(ζ_m) 中的元素，带对合 ζ ↦ ζ^{-1}"""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable[Number]):
        coeffs = tuple(Fraction(c) for c in coeffs)
        phi = len(reduction_table(m)[0])
        if len(coeffs) != phi:
            raise ValueError(f"expected {phi} coefficients for m={m}, got {len(coeffs)}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic is immutable")

    @classmethod
    def rational(cls, value: Number, m: int = 1) -> "Cyclotomic":
        phi = len(reduction_table(m)[0])
        return cls(m, [value] + [0] * (phi - 1))

    @classmethod
    def zero(cls, m: int = 1) -> "Cyclotomic":
        return cls.rational(0, m)

    @classmethod
    def one(cls, m: int = 1) -> "Cyclotomic":
        return cls.rational(1, m)

    def _exponent_vector(self) -> list[Fraction]:
        return list(self.coeffs) + [Fraction(0)] * (self.m - len(self.coeffs))

    def lift(self, m: int) -> "Cyclotomic":
        """嵌入到 Q(ζ_M)，要求 self.m 整除 M"""
        if m == self.m:
            return self
        if m % self.m:
            raise ValueError(f"cannot lift from m={self.m} to m={m}")
        step = m // self.m
        dense = [Fraction(0)] * m
        for j, c in enumerate(self.coeffs):
            dense[j * step] = c
        return Cyclotomic(m, _reduce(m, dense))

    def _align(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(other, self.m)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        m = math.lcm(self.m, other.m)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        pair = self._align(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return Cyclotomic(a.m, (x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, (-c for c in self.coeffs))

    def __sub__(self, other):
        pair = self._align(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return Cyclotomic(a.m, (x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.m, (c * other for c in self.coeffs))
        pair = self._align(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        m = a.m
        dense = [Fraction(0)] * m
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        dense[(i + j) % m] += x * y
        return Cyclotomic(m, _reduce(m, dense))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a cyclotomic number by zero")
            return Cyclotomic(self.m, (c / other for c in self.coeffs))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("only non-negative powers are supported")
        result = Cyclotomic.one(self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "Cyclotomic":
        """对合 ζ ↦ ζ^{-1}"""
        m = self.m
        dense = [Fraction(0)] * m
        for j, c in enumerate(self.coeffs):
            dense[(-j) % m] += c
        return Cyclotomic(m, _reduce(m, dense))

    def __eq__(self, other) -> bool:
        pair = self._align(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        return sum(
            (complex(c) * cmath.exp(2j * math.pi * k / self.m) for k, c in enumerate(self.coeffs)),
            0j,
        )

    def __repr__(self) -> str:
        return f"Cyclotomic(m={self.m}, {self})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append((c < 0, str(abs(c))))
                continue
            power = f"z{self.m}" if k == 1 else f"z{self.m}^{k}"
            magnitude = abs(c)
            text = power if magnitude == 1 else f"{magnitude}*{power}"
            terms.append((c < 0, text))
        if not terms:
            return "0"
        negative, text = terms[0]
        out = f"-{text}" if negative else text
        for negative, text in terms[1:]:
            out += f" - {text}" if negative else f" + {text}"
        return out


def root_of_unity(m: int, j: int) -> Cyclotomic:
    """ζ_m^j 的规范形式"""
    if m < 1:
        raise ValueError(f"root order must be positive, got {m}")
    return Cyclotomic(m, (Fraction(v) for v in reduction_table(m)[j % m]))


def from_exponent_counts(m: int, counts: Sequence[int]) -> Cyclotomic:
    """Σ_k counts[k]·ζ_m^k

    Args:
        m: 单位根阶
        counts: 长度为 m 的计数（可以是任意大整数）

    Returns:
        Cyclotomic
    """
    if len(counts) != m:
        raise ValueError(f"expected {m} counts, got {len(counts)}")
    return Cyclotomic(m, _reduce(m, [int(c) for c in counts]))
