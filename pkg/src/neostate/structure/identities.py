"""相干恒等式的穷举验证

每个恒等式编译为 (左边 − 右边) 的指数程序，在全部参数组合上批量求值；
带括号的因子交给 statesum.brackets 展开。
"""
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from neostate.statesum.brackets import BracketedFactor, Node, expand_brackets, word
from neostate.statesum.program import (
    ExponentProgram,
    GExpr,
    HExpr,
    Term,
    a0,
    evaluate_h,
    g,
    grid_bindings,
    h,
    hsum,
)
from neostate.structure.semiweak import IdentityName, SemiWeakStructure


@dataclass
class IdentityCheck:
    name: IdentityName
    passed: bool
    checked: int
    counterexample: Optional[dict[str, int]] = None
    detail: str = ""


@dataclass
class StructureReport:
    """verify_all 的结果"""

    structure: str
    normalization: list[str] = field(default_factory=list)
    checks: list[IdentityCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.normalization and all(c.passed for c in self.checks)

    def failures(self) -> list[IdentityCheck]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "structure": self.structure,
            "passed": self.passed,
            "normalization": list(self.normalization),
            "identities": {
                c.name.value: {
                    "passed": c.passed,
                    "checked": c.checked,
                    "counterexample": c.counterexample,
                    "detail": c.detail,
                }
                for c in self.checks
            },
        }


def _term(table: str, sign: int, *args) -> Term:
    return Term(table, sign, tuple(args))


def _plain(*terms: Term) -> ExponentProgram:
    return ExponentProgram(tuple(terms))


def _bracketed(*factors: BracketedFactor) -> ExponentProgram:
    terms: list[Term] = []
    for f in factors:
        terms += expand_brackets(f)
    return ExponentProgram(tuple(terms))


def _swap(symbol: str, sign: int, args, source, target) -> BracketedFactor:
    return BracketedFactor(symbol, sign, tuple(args), source, target)


def _at(symbol: str, sign: int, args, left, source, target, right=(), relations=()) -> BracketedFactor:
    """在上下文 left·□·right 中作用于相邻字母的因子"""
    return BracketedFactor(
        symbol, sign, tuple(args), word(*left, source, *right), word(*left, target, *right), tuple(relations)
    )


def _obj4(a: GExpr, b: GExpr, c: GExpr, d: GExpr) -> HExpr:
    return hsum(
        a0(b, c, d),
        -a0(a + b, c, d),
        a0(a, b + c, d),
        -a0(a, b, c + d),
        a0(a, b, c),
    )


def _pentagon(a: GExpr, b: GExpr, c: GExpr, d: GExpr, left=(), right=()) -> BracketedFactor:
    """π_{a,b,c,d}：底 ((α(b,c,d) α(a,bc,d)) α(a,b,c)) → 顶 (α(a,b,cd) α(ab,c,d))

    源靶相差 OBJ4 的左边，在半平坦标号下为零。
    """
    bottom = Node(Node(a0(b, c, d), a0(a, b + c, d)), a0(a, b, c))
    top = Node(a0(a, b, c + d), a0(a + b, c, d))
    return _at("pi", 1, (a, b, c, d), left, bottom, top, right, (_obj4(a, b, c, d),))


G1, G2, G3, G4, G5 = (g(f"g{i}") for i in range(1, 6))
H0, H1, H2, H3 = h("h"), h("h1"), h("h2"), h("h3")


def _pent5() -> ExponentProgram:
    # 字母按作用顺序记；两边都从 [L M N J K D] 走到 [C B A]
    A, Bq, C = a0(G1 + G2 + G3, G4, G5), a0(G1 + G2, G3, G4 + G5), a0(G1, G2, G3 + G4 + G5)
    D, E, F = a0(G1, G2, G3), a0(G1, G2 + G3, G4 + G5), a0(G2, G3, G4 + G5)
    I, J, K = a0(G2 + G3, G4, G5), a0(G1, G2 + G3 + G4, G5), a0(G1, G2 + G3, G4)
    L, M, N = a0(G3, G4, G5), a0(G2, G3 + G4, G5), a0(G2, G3, G4)
    O, P, Q = a0(G1 + G2, G3 + G4, G5), a0(G1 + G2, G3, G4), a0(G1, G2, G3 + G4)
    lhs = _bracketed(
        _pentagon(G2, G3, G4, G5, right=(J, K, D)),
        _pentagon(G1, G2 + G3, G4, G5, left=(F,), right=(D,)),
        _at("iota1", 1, (D, G4, G5), (F, E), Node(A, D), Node(D, A)),
        _pentagon(G1, G2, G3, G4 + G5, right=(A,)),
    )
    rhs = _bracketed(
        _at("iota2", 1, (G1, N, G5), (L, M), Node(N, J), Node(J, N), (K, D)),
        _pentagon(G1, G2, G3, G4, left=(L, M, J)),
        _pentagon(G1, G2, G3 + G4, G5, left=(L,), right=(P,)),
        _at("iota3", -1, (G1, G2, L), (), Node(L, C), Node(C, L), (O, P)),
        _pentagon(G1 + G2, G3, G4, G5, left=(C,)),
    )
    return lhs + rhs.inverse()


def _crossings(h_letter: HExpr, steps, rightward: bool) -> list[BracketedFactor]:
    """h 依次越过 α⁰ 字母

    steps 为 [(映射名, 符号, 参数, 被越过的字母)]，按越过的先后排列；
    rightward=False 时 h 从右端出发向左移动。
    """
    letters = [s[3] for s in steps]
    if not rightward:
        letters = letters[::-1]
    out = []
    n = len(letters)
    for k, (symbol, sign, args, x) in enumerate(steps):
        i = k if rightward else n - 1 - k
        before, after = tuple(letters[:i]), tuple(letters[i + 1:])
        if rightward:
            out.append(_at(symbol, sign, args, before, Node(h_letter, x), Node(x, h_letter), after))
        else:
            out.append(_at(symbol, sign, args, before, Node(x, h_letter), Node(h_letter, x), after))
    return out


def _cocycle(bottom_steps, top_steps, rightward: bool, h_letter: HExpr = H0) -> ExponentProgram:
    """h 越过 π_{g1,g2,g3,g4} 的底与顶两条路径

    两边用 π 补齐：h 在右端时先越过底再在左侧作用 π，
    或先在右侧作用 π 再越过顶；h 在左端时反之。
    """
    if rightward:
        bottom_side = _crossings(h_letter, bottom_steps, True) + [_pentagon(G1, G2, G3, G4, right=(h_letter,))]
        top_side = [_pentagon(G1, G2, G3, G4, left=(h_letter,))] + _crossings(h_letter, top_steps, True)
    else:
        bottom_side = _crossings(h_letter, bottom_steps, False) + [_pentagon(G1, G2, G3, G4, left=(h_letter,))]
        top_side = [_pentagon(G1, G2, G3, G4, right=(h_letter,))] + _crossings(h_letter, top_steps, False)
    return _bracketed(*bottom_side) + _bracketed(*top_side).inverse()


def _mult(symbol: str, args, rightward: bool) -> ExponentProgram:
    """h1h2 整体越过 α⁰(g1,g2,g3) 与 h1、h2 依次越过"""
    alpha = a0(G1, G2, G3)
    pair = Node(H1, H2)
    whole, first, second = args(H1 + H2), args(H1), args(H2)
    if rightward:
        lhs = _bracketed(_at(symbol, 1, whole, (), Node(pair, alpha), Node(alpha, pair)))
        rhs = _bracketed(
            _at(symbol, 1, second, (H1,), Node(H2, alpha), Node(alpha, H2)),
            _at(symbol, 1, first, (), Node(H1, alpha), Node(alpha, H1), (H2,)),
        )
    else:
        lhs = _bracketed(_at(symbol, 1, whole, (), Node(alpha, pair), Node(pair, alpha)))
        rhs = _bracketed(
            _at(symbol, 1, first, (), Node(alpha, H1), Node(H1, alpha), (H2,)),
            _at(symbol, 1, second, (H1,), Node(alpha, H2), Node(H2, alpha)),
        )
    return lhs + rhs.inverse()


@lru_cache(maxsize=None)
def identity_programs(name: IdentityName) -> tuple[tuple[str, ...], list[tuple[str, ExponentProgram]]]:
    """返回 (变量列表, [(变体名, 左边−右边 程序)])

    变量名以 g 开头的取值于 G，其余取值于 H。字按作用顺序从左到右书写，
    τ_{a,b}、ι¹、ι³ 把右侧字母移到左侧，ι² 把左侧字母移到右侧，π 由底到顶。
    """
    if name is IdentityName.MOR4:
        h4 = h("h4")
        prog = _plain(
            _term("alpha1", 1, H2, H3, h4),
            _term("alpha1", -1, H1 + H2, H3, h4),
            _term("alpha1", 1, H1, H2 + H3, h4),
            _term("alpha1", -1, H1, H2, H3 + h4),
            _term("alpha1", 1, H1, H2, H3),
        )
        return ("h1", "h2", "h3", "h4"), [("", prog)]

    if name is IdentityName.HEX:
        lhs1 = _bracketed(_swap("tau", 1, (H1 + H2, H3), Node(Node(H1, H2), H3), Node(H3, Node(H1, H2))))
        rhs1 = _bracketed(
            _swap("tau", 1, (H2, H3), Node(H1, Node(H2, H3)), Node(H1, Node(H3, H2))),
            _swap("tau", 1, (H1, H3), Node(Node(H1, H3), H2), Node(Node(H3, H1), H2)),
        )
        lhs2 = _bracketed(_swap("tau", 1, (H1, H2 + H3), Node(H1, Node(H2, H3)), Node(Node(H2, H3), H1)))
        rhs2 = _bracketed(
            _swap("tau", 1, (H1, H2), Node(Node(H1, H2), H3), Node(Node(H2, H1), H3)),
            _swap("tau", 1, (H1, H3), Node(H2, Node(H1, H3)), Node(H2, Node(H3, H1))),
        )
        return ("h1", "h2", "h3"), [("first", lhs1 + rhs1.inverse()), ("second", lhs2 + rhs2.inverse())]

    g4h = ("g1", "g2", "g3", "g4", "h")
    p, q, r = a0(G2, G3, G4), a0(G1, G2 + G3, G4), a0(G1, G2, G3)
    s, u = a0(G1, G2, G3 + G4), a0(G1 + G2, G3, G4)

    if name is IdentityName.PENT5:
        return ("g1", "g2", "g3", "g4", "g5"), [("", _pent5())]

    if name is IdentityName.I1_COCYCLE:
        # h 位于 g1
        prog = _cocycle(
            [("iota1", 1, (H0, G2, G3), r), ("iota1", 1, (H0, G2 + G3, G4), q), ("tau", -1, (H0, p), p)],
            [("iota1", 1, (H0, G3, G4), u), ("iota1", 1, (H0, G2, G3 + G4), s)],
            rightward=False,
        )
        return g4h, [("", prog)]

    if name is IdentityName.I3_COCYCLE:
        # h 位于 g4
        prog = _cocycle(
            [("tau", 1, (r, H0), r), ("iota3", 1, (G1, G2 + G3, H0), q), ("iota3", 1, (G2, G3, H0), p)],
            [("iota3", 1, (G1 + G2, G3, H0), u), ("iota3", 1, (G1, G2, H0), s)],
            rightward=False,
        )
        return g4h, [("", prog)]

    if name is IdentityName.I2_RIGHT:
        # h 位于 g2，越过 α⁰(g2,g3,g4) 与 α⁰(g1g2,g3,g4) 的 ι¹ 两边相消
        prog = _cocycle(
            [("iota1", -1, (H0, G3, G4), p), ("iota2", 1, (G1, H0, G4), q), ("iota2", 1, (G1, H0, G3), r)],
            [("iota2", 1, (G1, H0, G3 + G4), s), ("iota1", -1, (H0, G3, G4), u)],
            rightward=True,
        )
        return g4h, [("", prog.inverse())]

    if name is IdentityName.I2_LEFT:
        # h 位于 g3，ι³ 两边相消
        prog = _cocycle(
            [("iota2", 1, (G2, H0, G4), p), ("iota2", 1, (G1, H0, G4), q), ("iota3", -1, (G1, G2, H0), r)],
            [("iota3", -1, (G1, G2, H0), s), ("iota2", 1, (G1 + G2, H0, G4), u)],
            rightward=True,
        )
        return g4h, [("", prog.inverse())]

    mult = ("g1", "g2", "g3", "h1", "h2")
    if name is IdentityName.I1_MULT:
        return mult, [("", _mult("iota1", lambda x: (x, G2, G3), rightward=False))]

    if name is IdentityName.I2_MULT:
        return mult, [("", _mult("iota2", lambda x: (G1, x, G3), rightward=True))]

    if name is IdentityName.I3_MULT:
        return mult, [("", _mult("iota3", lambda x: (G1, G2, x), rightward=False))]

    raise ValueError(f"{name} is not a phase identity")


def obj4_expression() -> HExpr:
    """OBJ4：α⁰ 的 3-上闭链条件，取值于 H"""
    return _obj4(G1, G2, G3, G4)



def _domains(S: SemiWeakStructure, variables: tuple[str, ...]) -> list[tuple[str, int]]:
    return [(v, S.G.order if v.startswith("g") else S.H.order) for v in variables]


def _first_failure(bindings: dict[str, np.ndarray], bad: np.ndarray) -> Optional[dict[str, int]]:
    idx = np.flatnonzero(bad)
    if len(idx) == 0:
        return None
    i = int(idx[0])
    return {name: int(arr[i]) for name, arr in bindings.items()}


def verify_identity(S: SemiWeakStructure, name: IdentityName) -> IdentityCheck:
    """穷举检查一个恒等式

    Args:
        S: 结构
        name: 恒等式名称

    Returns:
        IdentityCheck，失败时带第一个反例
    """
    name = IdentityName(name)
    if name is IdentityName.OBJ4:
        variables = ("g1", "g2", "g3", "g4")
        bindings = grid_bindings(_domains(S, variables))
        values = np.broadcast_to(evaluate_h(S, obj4_expression(), bindings), bindings["g1"].shape)
        counter = _first_failure(bindings, values != 0)
        return IdentityCheck(name, counter is None, int(values.size), counter)

    variables, variants = identity_programs(name)
    bindings = grid_bindings(_domains(S, variables))
    checked = 0
    for label, prog in variants:
        values = np.broadcast_to(prog.evaluate(S, bindings), bindings[variables[0]].shape)
        checked += int(values.size)
        counter = _first_failure(bindings, values != 0)
        if counter is not None:
            return IdentityCheck(name, False, checked, counter, detail=label)
    return IdentityCheck(name, True, checked)


def verify_all(S: SemiWeakStructure) -> StructureReport:
    """规范化检查加全部恒等式"""
    report = StructureReport(structure=S.name or "structure", normalization=S.normalization_failures())
    for name in IdentityName:
        report.checks.append(verify_identity(S, name))
    return report
