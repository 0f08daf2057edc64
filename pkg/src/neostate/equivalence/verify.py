"""2-等价条件 1–9 的穷举验证

每个条件写成若干因子之和为零（条件 1 在 H 中，其余是 ζ_m 的指数），
因子来自三处：S（先施加 autH 或 autR）、S'，以及见证 E。
条件 4、6、9 的两边是字上的 2-态射链，括号 ⌈⌉ 展开为 (α¹)' 串；
S 一侧的因子搬到 S' 时带上 μ 串的差 M(靶) − M(源)。
条件 4、5、6 额外枚举 h 所在的对象，它只出现在被越过的 α⁰ 字母里。
"""
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

import numpy as np

from neostate.algebra import FiniteAbelianGroup
from neostate.core.errors import StructureError
from neostate.equivalence.data import EquivalenceData
from neostate.statesum.brackets import BracketedFactor, Node, Word, expand_brackets, mu_transport, word
from neostate.structure.identities import verify_all
from neostate.structure.semiweak import SemiWeakStructure

CONDITIONS = tuple(range(1, 10))


@dataclass(frozen=True)
class Factor:
    """条件中的一个因子

    side 为 "S"（带横线，即施加自同构后的 S 值）、"S'" 或 "E"。
    """

    sign: int
    side: str
    key: str
    args: tuple[int, ...]


@dataclass(frozen=True)
class Letter:
    """字的叶子：H 元素下标"""

    index: int
    H: FiniteAbelianGroup = field(compare=False, repr=False)

    def __add__(self, other: "Letter") -> "Letter":
        return Letter(self.H.add(self.index, other.index), self.H)


class EquivalenceContext:
    """生成因子所需的群运算、横线映射与字母"""

    def __init__(self, S: SemiWeakStructure, E: EquivalenceData, S2: Optional[SemiWeakStructure] = None):
        self.S = S
        self.S2 = S2
        self.E = E
        self.G, self.H = S.G, S.H

    def gm(self, a: int, b: int) -> int:
        return int(self.G.mul[a, b])

    def ha(self, a: int, b: int) -> int:
        return int(self.H.add_table[a, b])

    def gb(self, *xs: int) -> tuple[int, ...]:
        return tuple(self.E.autG[x] for x in xs)

    def hb(self, x: int) -> int:
        return self.E.autH[x]

    def Phi(self, a: int, b: int) -> int:
        return int(self.E.Phi[a, b])

    def a0(self, a: int, b: int, c: int) -> int:
        return int(self.S.alpha0[a, b, c])

    def letter(self, x: int) -> Letter:
        return Letter(int(x), self.H)

    def bar_alpha(self, a: int, b: int, c: int) -> Letter:
        """ᾱ⁰(a,b,c)：S 的 α⁰ 施加 autH"""
        return self.letter(self.hb(self.a0(a, b, c)))

    def new_alpha(self, a: int, b: int, c: int) -> Letter:
        """(α⁰)'(ā,b̄,c̄)"""
        if self.S2 is None:
            raise ValueError("letters of the target structure need S2")
        return self.letter(self.S2.alpha0[self.gb(a, b, c)])

    def phi_letter(self, a: int, b: int) -> Letter:
        return self.letter(self.Phi(a, b))


def _f(sign: int, side: str, key: str, *args: int) -> Factor:
    return Factor(sign, side, key, tuple(int(a) for a in args))


def _strings(sign: int, moves: list[tuple[Word, Word]]) -> list[Factor]:
    """一串 2-态射的 (α¹)' 串"""
    out = []
    for source, target in moves:
        for t in expand_brackets(BracketedFactor(None, 1, (), source, target), check=False):
            out.append(_f(sign * t.sign, "S'", "alpha1", *(x.index for x in t.args)))
    return out


def _transport(sign: int, source: Word, target: Word) -> list[Factor]:
    """S 的因子搬到 S' 时的 μ 修正，字母取 S 的元素"""
    return [
        _f(sign * s, "E", "mu", a.index, b.index)
        for s, (a, b) in mu_transport(BracketedFactor(None, 1, (), source, target))
    ]


def _negated(factors: list[Factor]) -> list[Factor]:
    return [Factor(-f.sign, f.side, f.key, f.args) for f in factors]


def _cond1(c: EquivalenceContext, g1, g2, g3) -> list[Factor]:
    return [
        _f(1, "S", "alpha0", g1, g2, g3),
        _f(1, "E", "Phi", c.gm(g1, g2), g3),
        _f(1, "E", "Phi", g1, g2),
        _f(-1, "E", "Phi", g1, c.gm(g2, g3)),
        _f(-1, "E", "Phi", g2, g3),
        _f(-1, "S'", "alpha0", *c.gb(g1, g2, g3)),
    ]


def _cond2(c: EquivalenceContext, h1, h2, h3) -> list[Factor]:
    return [
        _f(1, "S", "alpha1", h1, h2, h3),
        _f(1, "E", "mu", c.ha(h1, h2), h3),
        _f(1, "E", "mu", h1, h2),
        _f(-1, "E", "mu", h1, c.ha(h2, h3)),
        _f(-1, "E", "mu", h2, h3),
        _f(-1, "S'", "alpha1", c.hb(h1), c.hb(h2), c.hb(h3)),
    ]


def _cond3(c: EquivalenceContext, h1, h2) -> list[Factor]:
    a, b = c.letter(h1), c.letter(h2)
    return [
        _f(1, "S", "tau", h1, h2),
        *_transport(1, Node(a, b), Node(b, a)),
        _f(-1, "S'", "tau", c.hb(h1), c.hb(h2)),
    ]


def _hexagon_strings(c: EquivalenceContext, g1, g2, g3, h) -> list[Factor]:
    """h̄ 从右向左越过条件 1 六边形的两条路径，两边用 φ 补齐

    作用顺序的字：左边 [ᾱ⁰, Φ(g1g2,g3), Φ(g1,g2)]，右边 [Φ(g1,g2g3), Φ(g2,g3), (α⁰)']。
    """
    A, B, C = c.bar_alpha(g1, g2, g3), c.phi_letter(c.gm(g1, g2), g3), c.phi_letter(g1, g2)
    D, E, F = c.phi_letter(g1, c.gm(g2, g3)), c.phi_letter(g2, g3), c.new_alpha(g1, g2, g3)
    x = c.letter(c.hb(h))
    lhs = [
        (word(A, B, Node(C, x)), word(A, B, Node(x, C))),
        (word(A, Node(B, x), C), word(A, Node(x, B), C)),
        (word(Node(A, x), B, C), word(Node(x, A), B, C)),
        (word(x, Node(Node(A, B), C)), word(x, Node(Node(D, E), F))),
    ]
    rhs = [
        (word(Node(Node(A, B), C), x), word(Node(Node(D, E), F), x)),
        (word(D, E, Node(F, x)), word(D, E, Node(x, F))),
        (word(D, Node(E, x), F), word(D, Node(x, E), F)),
        (word(Node(D, x), E, F), word(Node(x, D), E, F)),
    ]
    return _strings(1, lhs) + _strings(-1, rhs)


def _crossing(c: EquivalenceContext, sign: int, h, alpha: int, rightward: bool) -> list[Factor]:
    """ι 越过 α⁰ 字母时的 μ 修正；rightward 表示 h 从左侧移到右侧"""
    a, x = c.letter(alpha), c.letter(h)
    if rightward:
        return _transport(sign, Node(x, a), Node(a, x))
    return _transport(sign, Node(a, x), Node(x, a))


def _cond4(c: EquivalenceContext, g1, h, g2, g3) -> list[Factor]:
    return [
        _f(1, "E", "psi", h, g2),
        _f(1, "E", "psi", h, g3),
        _f(1, "S", "iota1", h, g2, g3),
        *_crossing(c, 1, h, c.a0(g1, g2, g3), rightward=False),
        _f(-1, "S'", "iota1", c.hb(h), *c.gb(g2, g3)),
        _f(1, "S'", "tau", c.hb(h), c.Phi(g2, g3)),
        _f(-1, "E", "psi", h, c.gm(g2, g3)),
        *_hexagon_strings(c, g1, g2, g3, h),
    ]


def _cond5(c: EquivalenceContext, g1, g2, h, g3) -> list[Factor]:
    return [
        _f(1, "S", "iota2", g1, h, g3),
        *_crossing(c, 1, h, c.a0(g1, g2, g3), rightward=True),
        _f(-1, "S'", "iota2", c.gb(g1)[0], c.hb(h), c.gb(g3)[0]),
    ]


def _cond6(c: EquivalenceContext, g1, g2, g3, h) -> list[Factor]:
    return [
        _f(1, "S'", "tau", c.Phi(g1, g2), c.hb(h)),
        _f(1, "E", "chi", c.gm(g1, g2), h),
        _f(1, "S", "iota3", g1, g2, h),
        *_crossing(c, 1, h, c.a0(g1, g2, g3), rightward=False),
        _f(-1, "S'", "iota3", *c.gb(g1, g2), c.hb(h)),
        _f(-1, "E", "chi", g2, h),
        _f(-1, "E", "chi", g1, h),
        *_hexagon_strings(c, g1, g2, g3, h),
    ]


def _cond7(c: EquivalenceContext, h1, h2, g) -> list[Factor]:
    return [
        _f(1, "E", "psi", c.ha(h1, h2), g),
        _f(-1, "E", "psi", h1, g),
        _f(-1, "E", "psi", h2, g),
    ]


def _cond8(c: EquivalenceContext, g, h1, h2) -> list[Factor]:
    return [
        _f(1, "E", "chi", g, c.ha(h1, h2)),
        _f(-1, "E", "chi", g, h1),
        _f(-1, "E", "chi", g, h2),
    ]


def _cond9(c: EquivalenceContext, g1, g2, g3, g4) -> list[Factor]:
    m = c.gm
    b1, b2, b3, b4 = c.gb(g1, g2, g3, g4)
    P12, P23, P34 = c.Phi(g1, g2), c.Phi(g2, g3), c.Phi(g3, g4)
    lhs = [
        _f(-1, "E", "psi", c.a0(g1, g2, g3), g4),
        _f(1, "E", "phi", g1, g2, g3),
        _f(1, "E", "phi", g1, m(g2, g3), g4),
        _f(1, "S'", "iota2", b1, P23, b4),
        _f(-1, "E", "chi", g1, c.a0(g2, g3, g4)),
        _f(1, "E", "phi", g2, g3, g4),
        _f(1, "S'", "pi", b1, b2, b3, b4),
    ]
    # π̄ 由底 [α(2,3,4) α(1,23,4) α(1,2,3)] 到顶 [α(1,2,34) α(12,3,4)]
    p, q, r = (c.letter(c.a0(*xs)) for xs in ((g2, g3, g4), (g1, m(g2, g3), g4), (g1, g2, g3)))
    s, u = c.letter(c.a0(g1, g2, m(g3, g4))), c.letter(c.a0(m(g1, g2), g3, g4))
    rhs = [
        _f(1, "S", "pi", g1, g2, g3, g4),
        *_transport(1, Node(Node(p, q), r), Node(s, u)),
        _f(1, "E", "phi", m(g1, g2), g3, g4),
        _f(1, "S'", "iota1", P12, b3, b4),
        _f(-1, "S'", "tau", P12, P34),
        _f(1, "E", "phi", g1, g2, m(g3, g4)),
        _f(1, "S'", "iota3", b1, b2, P34),
    ]
    return lhs + _negated(rhs) + _pentagon_strings(c, g1, g2, g3, g4)


def _pentagon_strings(c: EquivalenceContext, g1, g2, g3, g4) -> list[Factor]:
    """条件 9 两边的 (α¹)' 串

    两边都从 [ᾱ(2,3,4) ᾱ(1,23,4) ᾱ(1,2,3) Φ(123,4) Φ(12,3) Φ(1,2)]
    走到 [Φ(1,234) Φ(2,34) Φ(3,4) α'(1,2,34) α'(12,3,4)]。
    """
    m = c.gm
    g12, g23, g34 = m(g1, g2), m(g2, g3), m(g3, g4)
    g123, g234 = m(g12, g3), m(g23, g4)
    a1, a2, a3 = c.bar_alpha(g1, g2, g3), c.bar_alpha(g1, g23, g4), c.bar_alpha(g2, g3, g4)
    a4, a5 = c.bar_alpha(g12, g3, g4), c.bar_alpha(g1, g2, g34)
    b1, b2, b3 = c.new_alpha(g1, g2, g3), c.new_alpha(g1, g23, g4), c.new_alpha(g2, g3, g4)
    b4, b5 = c.new_alpha(g12, g3, g4), c.new_alpha(g1, g2, g34)
    P = c.phi_letter
    P12, P12_3, P123_4 = P(g1, g2), P(g12, g3), P(g123, g4)
    P23, P1_23, P23_4, P1_234 = P(g2, g3), P(g1, g23), P(g23, g4), P(g1, g234)
    P34, P2_34, P12_34 = P(g3, g4), P(g2, g34), P(g12, g34)
    lhs = [
        (word(a3, a2, Node(a1, P123_4), P12_3, P12), word(a3, a2, Node(P123_4, a1), P12_3, P12)),
        (word(a3, a2, P123_4, Node(Node(a1, P12_3), P12)), word(a3, a2, P123_4, Node(Node(P1_23, P23), b1))),
        (word(a3, Node(Node(a2, P123_4), P1_23), P23, b1), word(a3, Node(Node(P1_234, P23_4), b2), P23, b1)),
        (word(a3, P1_234, P23_4, Node(b2, P23), b1), word(a3, P1_234, P23_4, Node(P23, b2), b1)),
        (word(Node(a3, P1_234), P23_4, P23, b2, b1), word(Node(P1_234, a3), P23_4, P23, b2, b1)),
        (word(P1_234, Node(Node(a3, P23_4), P23), b2, b1), word(P1_234, Node(Node(P2_34, P34), b3), b2, b1)),
        (word(P1_234, P2_34, P34, Node(Node(b3, b2), b1)), word(P1_234, P2_34, P34, Node(b5, b4))),
    ]
    rhs = [
        (word(Node(Node(a3, a2), a1), P123_4, P12_3, P12), word(Node(a5, a4), P123_4, P12_3, P12)),
        (word(a5, Node(Node(a4, P123_4), P12_3), P12), word(a5, Node(Node(P12_34, P34), b4), P12)),
        (word(a5, P12_34, P34, Node(b4, P12)), word(a5, P12_34, P34, Node(P12, b4))),
        (word(a5, P12_34, Node(P34, P12), b4), word(a5, P12_34, Node(P12, P34), b4)),
        (word(Node(Node(a5, P12_34), P12), P34, b4), word(Node(Node(P1_234, P2_34), b5), P34, b4)),
        (word(P1_234, P2_34, Node(b5, P34), b4), word(P1_234, P2_34, Node(P34, b5), b4)),
    ]
    return _strings(1, lhs) + _strings(-1, rhs)


# 条件编号 → (参数类型, 取值群, 因子生成函数)
CONDITION_TABLE: dict[int, tuple[str, str, Callable[..., list[Factor]]]] = {
    1: ("GGG", "H", _cond1),
    2: ("HHH", "R", _cond2),
    3: ("HH", "R", _cond3),
    4: ("GHGG", "R", _cond4),
    5: ("GGHG", "R", _cond5),
    6: ("GGGH", "R", _cond6),
    7: ("HHG", "R", _cond7),
    8: ("GHH", "R", _cond8),
    9: ("GGGG", "R", _cond9),
}


def condition_arguments(S: SemiWeakStructure, number: int) -> Iterator[tuple[int, ...]]:
    signature = CONDITION_TABLE[number][0]
    sizes = [S.G.order if c == "G" else S.H.order for c in signature]
    return itertools.product(*(range(n) for n in sizes))


def factor_value(S: SemiWeakStructure, S2: SemiWeakStructure, E: EquivalenceData, f: Factor) -> int:
    """因子的值：H 元素下标或 ζ_m 指数"""
    if f.side == "E":
        return int(E.table(f.key)[f.args])
    if f.side == "S'":
        return int(S2.table(f.key)[f.args])
    value = int(S.table(f.key)[f.args])
    return E.autH[value] if f.key == "alpha0" else (E.t * value) % S.m


def combine(S: SemiWeakStructure, group: str, values: list[tuple[int, int]]) -> int:
    """Σ sign·value，H 中返回元素下标，R 中返回指数"""
    if group == "R":
        return sum(sign * v for sign, v in values) % S.m
    H = S.H
    comps = np.zeros(H.rank, dtype=np.int64)
    for sign, v in values:
        comps = comps + sign * H.components[v]
    return int(H.index_array(comps)) if H.rank else 0


@dataclass
class ConditionCheck:
    number: int
    passed: bool
    checked: int
    counterexample: Optional[tuple[int, ...]] = None
    detail: str = ""


@dataclass
class EquivalenceReport:
    """verify_equivalence 的结果"""

    data_failures: list[str] = field(default_factory=list)
    checks: list[ConditionCheck] = field(default_factory=list)
    structure_failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            not self.data_failures
            and not self.structure_failures
            and all(c.passed for c in self.checks)
        )

    def failures(self) -> list[ConditionCheck]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "data": list(self.data_failures),
            "structures": list(self.structure_failures),
            "conditions": {
                str(c.number): {
                    "passed": c.passed,
                    "checked": c.checked,
                    "counterexample": list(c.counterexample) if c.counterexample else None,
                    "detail": c.detail,
                }
                for c in self.checks
            },
        }


def verify_condition(
    S: SemiWeakStructure, S2: SemiWeakStructure, E: EquivalenceData, number: int
) -> ConditionCheck:
    """穷举检查一个条件"""
    _, group, build = CONDITION_TABLE[number]
    ctx = EquivalenceContext(S, E, S2)
    checked = 0
    for args in condition_arguments(S, number):
        checked += 1
        factors = build(ctx, *args)
        total = combine(S, group, [(f.sign, factor_value(S, S2, E, f)) for f in factors])
        if total != 0:
            return ConditionCheck(
                number, False, checked, tuple(int(a) for a in args),
                detail=f"residual {total}",
            )
    return ConditionCheck(number, True, checked)


def solve_condition(
    S: SemiWeakStructure, S2: SemiWeakStructure, E: EquivalenceData, number: int, key: str
) -> np.ndarray:
    """由条件 number 解出 S' 的映射 key，其余因子取 S2 中的现值

    Raises:
        StructureError: 同一位置在 h 所在对象不同时得到不同的值，
            即所要的 S' 不存在
    """
    _, group, build = CONDITION_TABLE[number]
    ctx = EquivalenceContext(S, E, S2)
    table = np.zeros(S2.table(key).shape, dtype=np.int64)
    seen = np.zeros(table.shape, dtype=bool)
    for args in condition_arguments(S, number):
        factors = build(ctx, *args)
        unknown = [f for f in factors if f.side == "S'" and f.key == key]
        if len(unknown) != 1:
            raise ValueError(f"condition {number} does not determine {key}")
        target = unknown[0]
        rest = combine(S, group, [(f.sign, factor_value(S, S2, E, f)) for f in factors if f is not target])
        value = (-target.sign * rest) % S.m
        if not seen[target.args]:
            table[target.args] = value
            seen[target.args] = True
        elif table[target.args] != value:
            raise StructureError(
                f"{key}{target.args} of the twisted structure depends on the hidden object "
                f"(condition {number} at {tuple(int(a) for a in args)})"
            )
    return table


def verify_equivalence(
    S: SemiWeakStructure, S2: SemiWeakStructure, E: EquivalenceData, structures: bool = True
) -> EquivalenceReport:
    """检查 E 是否为 S 与 S' 之间的 2-等价见证

    Args:
        S: 源结构
        S2: 靶结构，需与 S 有相同的 G、H 与 m
        E: 见证数据
        structures: 是否同时对 S 与 S' 运行 verify_all

    Returns:
        EquivalenceReport，数据本身非法时不再检查条件
    """
    report = EquivalenceReport(data_failures=E.failures(S))
    if not S.same_shape(S2):
        report.data_failures.append("structures are defined over different groups")
    if S.m != S2.m:
        report.data_failures.append(f"root orders differ: {S.m} vs {S2.m}")
    if report.data_failures:
        return report
    if structures:
        for label, T in (("source", S), ("target", S2)):
            checked = verify_all(T)
            report.structure_failures += [f"{label}: {msg}" for msg in checked.normalization]
            report.structure_failures += [f"{label}: {c.name.value} fails" for c in checked.failures()]
    for number in CONDITIONS:
        report.checks.append(verify_condition(S, S2, E, number))
    return report
