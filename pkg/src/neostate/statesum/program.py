"""指数程序：结构映射乘积的符号表示与批量求值

一个程序是若干项 (映射名, 符号, 参数表达式) 的和，值为 ζ_m 的指数。
参数表达式是变量的符号组合：G 参数为变量名的有序乘积，
H 参数为 H 变量与 α⁰ 项的整系数线性组合。
程序只编译一次，之后在 numpy 数组上对任意多组变量取值同时求值。
"""
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

import numpy as np

GExpr = tuple[str, ...]


def g(*names: str) -> GExpr:
    """G 变量的有序乘积，g("g1", "g2") 表示 g1·g2"""
    return tuple(names)


@dataclass(frozen=True)
class HExpr:
    """H 中的符号元素：Σ coef·atom

    atom 为 ("var", 名称) 或 ("alpha0", GExpr, GExpr, GExpr)。
    """

    terms: tuple[tuple[int, tuple], ...] = ()

    @staticmethod
    def _canonical(pairs) -> tuple[tuple[int, tuple], ...]:
        acc: dict[tuple, int] = {}
        for coef, atom in pairs:
            acc[atom] = acc.get(atom, 0) + coef
        return tuple(sorted(((c, a) for a, c in acc.items() if c), key=lambda t: repr(t[1])))

    def __add__(self, other: "HExpr") -> "HExpr":
        return HExpr(self._canonical(self.terms + other.terms))

    def __neg__(self) -> "HExpr":
        return HExpr(tuple((-c, a) for c, a in self.terms))

    def __sub__(self, other: "HExpr") -> "HExpr":
        return self + (-other)

    def __mul__(self, k: int) -> "HExpr":
        return HExpr(self._canonical((k * c, a) for c, a in self.terms))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for c, atom in self.terms:
            text = atom[1] if atom[0] == "var" else "a0(" + ",".join(".".join(x) or "1" for x in atom[1:]) + ")"
            parts.append(text if c == 1 else f"{c}*{text}")
        return " + ".join(parts)


ZERO = HExpr()


def h(name: str) -> HExpr:
    return HExpr(((1, ("var", name)),))


def a0(g1: GExpr, g2: GExpr, g3: GExpr) -> HExpr:
    """α⁰(g1, g2, g3) 作为 H 中的符号元素"""
    return HExpr(((1, ("alpha0", tuple(g1), tuple(g2), tuple(g3))),))


def hsum(*exprs: HExpr) -> HExpr:
    out = ZERO
    for e in exprs:
        out = out + e
    return out


Arg = Union[GExpr, HExpr]


@dataclass(frozen=True)
class Term:
    """单个结构映射因子：table(args)^sign"""

    table: str
    sign: int
    args: tuple[Arg, ...]

    def inverse(self) -> "Term":
        return Term(self.table, -self.sign, self.args)


@dataclass(frozen=True)
class ExponentProgram:
    terms: tuple[Term, ...]

    def __add__(self, other: "ExponentProgram") -> "ExponentProgram":
        return ExponentProgram(self.terms + other.terms)

    def inverse(self) -> "ExponentProgram":
        return ExponentProgram(tuple(t.inverse() for t in self.terms))

    def tables(self) -> set[str]:
        return {t.table for t in self.terms}

    def scaled(self, sign: int) -> "ExponentProgram":
        return self if sign == 1 else self.inverse()

    def renamed(self, mapping: Mapping[str, str]) -> "ExponentProgram":
        """变量改名，未出现在 mapping 中的名字保持不变"""
        return ExponentProgram(
            tuple(
                Term(t.table, t.sign, tuple(rename_arg(a, mapping) for a in t.args))
                for t in self.terms
            )
        )

    def variables(self) -> set[str]:
        names: set[str] = set()
        for t in self.terms:
            for a in t.args:
                names |= arg_variables(a)
        return names

    def evaluate(
        self,
        structure,
        bindings: Mapping[str, np.ndarray],
        tables: Optional[Mapping[str, np.ndarray]] = None,
        modulus: Optional[int] = None,
    ) -> np.ndarray:
        """对一批变量取值求指数和

        Args:
            structure: SemiWeakStructure，提供群与默认映射表
            bindings: 变量名到元素下标数组的映射，数组形状需可广播
            tables: 覆盖或补充的映射表（例如等价数据中的 μ）
            modulus: 指数模数，默认为 structure.m

        Returns:
            int64 指数数组
        """
        evaluator = _Evaluator(structure, bindings)
        m = structure.m if modulus is None else modulus
        shape = np.broadcast_shapes(*(np.shape(v) for v in bindings.values())) if bindings else ()
        total = np.zeros(shape, dtype=np.int64)
        lookup: dict[str, Optional[np.ndarray]] = {}
        for key in self.tables():
            table = tables[key] if tables and key in tables else structure.table(key)
            # 恒为零的表不参与求值
            lookup[key] = table if np.any(table) else None
        for term in self.terms:
            table = lookup[term.table]
            if table is None:
                continue
            index = tuple(
                evaluator.g(arg) if isinstance(arg, tuple) else evaluator.h(arg) for arg in term.args
            )
            total = total + term.sign * table[index]
        return total % m


class _Evaluator:
    def __init__(self, structure, bindings: Mapping[str, np.ndarray]):
        self.S = structure
        self.bindings = {k: np.asarray(v, dtype=np.int64) for k, v in bindings.items()}
        self._g: dict[GExpr, np.ndarray] = {}
        self._h: dict[HExpr, np.ndarray] = {}

    def g(self, expr: GExpr) -> np.ndarray:
        if expr in self._g:
            return self._g[expr]
        if not expr:
            value = np.zeros((), dtype=np.int64)
        elif len(expr) == 1:
            value = self.bindings[expr[0]]
        else:
            value = self.S.G.mul[self.g(expr[:-1]), self.bindings[expr[-1]]]
        self._g[expr] = value
        return value

    def h(self, expr: HExpr) -> np.ndarray:
        if expr in self._h:
            return self._h[expr]
        H = self.S.H
        comps = np.zeros((H.rank,), dtype=np.int64)
        for coef, atom in expr.terms:
            if atom[0] == "var":
                index = self.bindings[atom[1]]
            else:
                index = self.S.alpha0[self.g(atom[1]), self.g(atom[2]), self.g(atom[3])]
            comps = comps + coef * H.components[index]
        value = H.index_array(comps) if H.rank else np.zeros(comps.shape[:-1], dtype=np.int64)
        self._h[expr] = value
        return value


def evaluate_h(structure, expr: HExpr, bindings: Mapping[str, np.ndarray]) -> np.ndarray:
    """求 H 表达式的元素下标"""
    return _Evaluator(structure, bindings).h(expr)


def evaluate_g(structure, expr: GExpr, bindings: Mapping[str, np.ndarray]) -> np.ndarray:
    return _Evaluator(structure, bindings).g(expr)


def grid_bindings(domains: Sequence[tuple[str, int]]) -> dict[str, np.ndarray]:
    """变量全部取值的笛卡尔积，每个变量得到一维数组"""
    if not domains:
        return {}
    sizes = [n for _, n in domains]
    grids = np.indices(sizes).reshape(len(sizes), -1)
    return {name: grids[i] for i, (name, _) in enumerate(domains)}


def rename_arg(arg: Arg, mapping: Mapping[str, str]) -> Arg:
    if isinstance(arg, tuple):
        return tuple(mapping.get(n, n) for n in arg)
    pairs = []
    for coef, atom in arg.terms:
        if atom[0] == "var":
            pairs.append((coef, ("var", mapping.get(atom[1], atom[1]))))
        else:
            pairs.append((coef, ("alpha0",) + tuple(rename_arg(x, mapping) for x in atom[1:])))
    return HExpr(HExpr._canonical(pairs))


def arg_variables(arg: Arg) -> set[str]:
    if isinstance(arg, tuple):
        return set(arg)
    names: set[str] = set()
    for _, atom in arg.terms:
        if atom[0] == "var":
            names.add(atom[1])
        else:
            for x in atom[1:]:
                names |= set(x)
    return names
