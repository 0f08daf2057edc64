"""态和计算结果"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from neostate.algebra import Cyclotomic, from_exponent_counts

METHODS = ("brute", "linear", "quadratic", "gray")


@dataclass
class StateSumResult:
    """Z(M, T) 及其计算元数据

    raw 是未归一化的 Σ_ℓ Π Z(S,ℓ)^ε，value = normalization · raw。
    """

    value: Cyclotomic
    raw: Cyclotomic
    normalization: Fraction
    method: str
    count: int
    elapsed: float = 0.0
    structure: str = ""
    complex: str = ""
    extra: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_histogram(
        cls, m: int, histogram, normalization: Fraction, method: str, count: int, **meta
    ) -> "StateSumResult":
        """由指数直方图（Σ 计数·ζ_m^e）构造结果"""
        raw = from_exponent_counts(m, [int(c) for c in histogram])
        return cls.from_raw(raw, normalization, method, count, **meta)

    @classmethod
    def from_raw(
        cls, raw: Cyclotomic, normalization: Fraction, method: str, count: int, **meta
    ) -> "StateSumResult":
        return cls(
            value=raw * normalization,
            raw=raw,
            normalization=normalization,
            method=method,
            count=count,
            **meta,
        )

    def approx(self, precision: int = 12) -> complex:
        z = self.value.to_complex()
        return complex(round(z.real, precision), round(z.imag, precision))

    def to_dict(self, precision: int = 12) -> dict[str, Any]:
        z = self.approx(precision)
        return {
            "value": str(self.value),
            "raw": str(self.raw),
            "normalization": str(self.normalization),
            "approx": {"re": z.real, "im": z.imag},
            "method": self.method,
            "labellings": self.count,
            "structure": self.structure,
            "complex": self.complex,
            **self.extra,
        }
