"""单个 4-单形上的配分函数

局部顶点记为 0..4（i<j<k<l<m），边变量 "g01"… 取值于 G，
面变量 "h012"… 取值于 H。权重是六个带括号因子组成的循环，
源字与靶字之间的差由所在四面体的半平坦方程吸收。
"""
import itertools
from functools import lru_cache
from typing import Mapping, Optional, Sequence

import numpy as np

from neostate.core.errors import LabellingError
from neostate.statesum.brackets import BracketedFactor, Node, expand_brackets
from neostate.statesum.program import ExponentProgram, HExpr, Term, a0, g, h

SIMPLEX_EDGES: tuple[tuple[int, int], ...] = tuple(itertools.combinations(range(5), 2))
SIMPLEX_TRIANGLES: tuple[tuple[int, int, int], ...] = tuple(itertools.combinations(range(5), 3))
SIMPLEX_TETRAHEDRA: tuple[tuple[int, ...], ...] = tuple(itertools.combinations(range(5), 4))


def edge_var(a: int, b: int) -> str:
    return f"g{a}{b}"


def face_var(a: int, b: int, c: int) -> str:
    return f"h{a}{b}{c}"


def _e(a: int, b: int):
    return g(edge_var(a, b))


def _f(a: int, b: int, c: int) -> HExpr:
    return h(face_var(a, b, c))


def _letter(i: int, j: int, k: int, l: int) -> HExpr:
    """四面体 (ijkl) 的 α⁰ 字母 α⁰(g_kl, g_jk, g_ij)"""
    return a0(_e(k, l), _e(j, k), _e(i, j))


def semiflat_relation(i: int, j: int, k: int, l: int) -> HExpr:
    """h_jkl − h_ikl + h_ijl − h_ijk − α⁰(g_kl, g_jk, g_ij)，可容许标号下为零"""
    return _f(j, k, l) - _f(i, k, l) + _f(i, j, l) - _f(i, j, k) - _letter(i, j, k, l)


@lru_cache(maxsize=None)
def simplex_factors() -> tuple[BracketedFactor, ...]:
    """(ijklm) 的六个带括号因子，按作用顺序"""
    i, j, k, l, m = range(5)
    f = _f
    return (
        BracketedFactor(
            "iota2", 1, (_e(l, m), f(j, k, l), _e(i, j)),
            Node(Node(f(i, j, m), f(j, l, m)), f(j, k, l)),
            Node(Node(Node(_letter(i, j, l, m), f(i, l, m)), f(i, j, l)), f(j, k, l)),
            (semiflat_relation(i, j, l, m),),
        ),
        BracketedFactor(
            None, 1, (),
            Node(f(i, l, m), Node(f(i, j, l), f(j, k, l))),
            Node(Node(_letter(i, j, k, l), f(i, l, m)), Node(f(i, k, l), f(i, j, k))),
            (semiflat_relation(i, j, k, l),),
        ),
        BracketedFactor(
            "iota3", -1, (_e(l, m), _e(k, l), f(i, j, k)),
            Node(Node(f(i, l, m), f(i, k, l)), f(i, j, k)),
            Node(Node(Node(-_letter(i, k, l, m), f(i, k, m)), f(k, l, m)), f(i, j, k)),
            (semiflat_relation(i, k, l, m),),
        ),
        BracketedFactor(
            "tau", 1, (f(k, l, m), f(i, j, k)),
            Node(f(i, k, m), Node(f(k, l, m), f(i, j, k))),
            Node(f(i, k, m), Node(f(i, j, k), f(k, l, m))),
        ),
        BracketedFactor(
            "iota1", -1, (f(k, l, m), _e(j, k), _e(i, j)),
            Node(Node(f(i, k, m), f(i, j, k)), f(k, l, m)),
            Node(Node(Node(-_letter(i, j, k, m), f(i, j, m)), f(j, k, m)), f(k, l, m)),
            (semiflat_relation(i, j, k, m),),
        ),
        BracketedFactor(
            "pi", 1, (_e(l, m), _e(k, l), _e(j, k), _e(i, j)),
            Node(f(i, j, m), Node(f(j, k, m), f(k, l, m))),
            Node(Node(_letter(j, k, l, m), f(i, j, m)), Node(f(j, l, m), f(j, k, l))),
            (semiflat_relation(j, k, l, m),),
        ),
    )


@lru_cache(maxsize=None)
def simplex_program() -> ExponentProgram:
    """展开全部括号后的单形权重"""
    terms: list[Term] = []
    for factor in simplex_factors():
        terms += expand_brackets(factor)
    return ExponentProgram(tuple(terms))


@lru_cache(maxsize=None)
def fifteen_j_program() -> ExponentProgram:
    """G 平凡时的 15j 乘积：六个 1-结合子与一个交换子"""
    i, j, k, l, m = range(5)
    f = _f

    def alpha(sign, x, y, z):
        return Term("alpha1", sign, (x, y, z))

    return ExponentProgram(
        (
            alpha(-1, f(i, k, m), f(k, l, m), f(i, j, k)),
            Term("tau", 1, (f(k, l, m), f(i, j, k))),
            alpha(1, f(i, k, m), f(i, j, k), f(k, l, m)),
            alpha(-1, f(i, j, m), f(j, k, m), f(k, l, m)),
            alpha(1, f(i, j, m), f(j, l, m), f(j, k, l)),
            alpha(-1, f(i, l, m), f(i, j, l), f(j, k, l)),
            alpha(1, f(i, l, m), f(i, k, l), f(i, j, k)),
        )
    )


def local_variables() -> list[tuple[str, str]]:
    """(变量名, "G"|"H")，边在前"""
    return [(edge_var(*e), "G") for e in SIMPLEX_EDGES] + [
        (face_var(*t), "H") for t in SIMPLEX_TRIANGLES
    ]


def local_failures(S, labels: Mapping[str, int]) -> list[str]:
    """局部半平坦条件的违反列表"""
    G, H = S.G, S.H
    out = []
    for a, b, c in SIMPLEX_TRIANGLES:
        expected = G.mul[labels[edge_var(b, c)], labels[edge_var(a, b)]]
        if labels[edge_var(a, c)] != expected:
            out.append(f"edge ({a}{c}) is not flat over ({a}{b}{c})")
    for a, b, c, d in SIMPLEX_TETRAHEDRA:
        lhs = np.zeros(H.rank, dtype=np.int64)
        for sign, face in ((1, (b, c, d)), (-1, (a, c, d)), (1, (a, b, d)), (-1, (a, b, c))):
            lhs = lhs + sign * H.components[labels[face_var(*face)]]
        rhs = S.alpha0[
            labels[edge_var(c, d)], labels[edge_var(b, c)], labels[edge_var(a, b)]
        ]
        if H.rank and int(H.index_array(lhs)) != int(rhs):
            out.append(f"faces around ({a}{b}{c}{d}) violate semi-flatness")
    return out


def _local_labels(labelling, simplex: Sequence[int]) -> Mapping[str, int]:
    if hasattr(labelling, "restrict"):
        return labelling.restrict(simplex)
    return labelling


def z_simplex(S, labelling, simplex: Sequence[int] = (0, 1, 2, 3, 4), check: bool = True) -> int:
    """单形 (ijklm) 上的配分函数，返回 ζ_m 的指数

    Args:
        S: 结构
        labelling: Labelling（调用其 restrict），或已是局部变量名到下标的映射
        simplex: 单形的五个顶点，升序
        check: 是否先检查局部半平坦条件

    Returns:
        指数 e，Z = ζ_m^e
    """
    labels = _local_labels(labelling, simplex)
    if check:
        failures = local_failures(S, labels)
        if failures:
            raise LabellingError(f"simplex {tuple(simplex)}: " + "; ".join(failures))
    bindings = {name: np.asarray(labels[name], dtype=np.int64) for name, _ in local_variables()}
    return int(simplex_program().evaluate(S, bindings))


def fifteen_j(S, labelling, simplex: Sequence[int] = (0, 1, 2, 3, 4)) -> int:
    """G 平凡时的 15j 指数"""
    if not S.is_g_trivial:
        raise ValueError("the 15j product is defined for trivial G only")
    labels = _local_labels(labelling, simplex)
    bindings = {name: np.asarray(labels.get(name, 0), dtype=np.int64) for name, _ in local_variables()}
    return int(fifteen_j_program().evaluate(S, bindings))


def admissible_local_labellings(S, g_labels: Optional[Mapping[str, int]] = None):
    """单形上全部可容许标号的批量绑定

    边标号由 g01, g12, g23, g34 决定（或由 g_labels 给定），面标号由
    h012, h013, h014, h023, h024, h034 自由选取，其余四个面由半平坦方程解出。

    Returns:
        变量名到一维下标数组的映射
    """
    G, H = S.G, S.H
    chain = ["g01", "g12", "g23", "g34"]
    if g_labels is None:
        grids = np.indices((G.order,) * 4).reshape(4, -1)
        base = {name: grids[n] for n, name in enumerate(chain)}
    else:
        base = {name: np.asarray([g_labels[name]], dtype=np.int64) for name in chain}
    count = len(base["g01"])
    free_faces = [face_var(0, b, c) for b, c in itertools.combinations(range(1, 5), 2)]
    hgrid = np.indices((H.order,) * len(free_faces)).reshape(len(free_faces), -1)
    g_idx = np.repeat(np.arange(count), hgrid.shape[1])
    h_idx = np.tile(np.arange(hgrid.shape[1]), count)

    labels: dict[str, np.ndarray] = {name: base[name][g_idx] for name in chain}
    # 按跨度递增求值，g_ab = g_{a+1,b}·g_{a,a+1}
    for a, b in sorted(SIMPLEX_EDGES, key=lambda e: e[1] - e[0]):
        if b - a > 1:
            labels[edge_var(a, b)] = G.mul[labels[edge_var(a + 1, b)], labels[edge_var(a, a + 1)]]
    for n, name in enumerate(free_faces):
        labels[name] = hgrid[n][h_idx]
    comps = H.components
    for a, b, c in SIMPLEX_TRIANGLES:
        if a == 0:
            continue
        # 四面体 (0abc): h_abc = α⁰(g_bc, g_ab, g_0a) + h_0bc − h_0ac + h_0ab
        alpha = S.alpha0[labels[edge_var(b, c)], labels[edge_var(a, b)], labels[edge_var(0, a)]]
        total = (
            comps[alpha]
            + comps[labels[face_var(0, b, c)]]
            - comps[labels[face_var(0, a, c)]]
            + comps[labels[face_var(0, a, b)]]
        )
        labels[face_var(a, b, c)] = H.index_array(total) if H.rank else np.zeros_like(alpha)
    return labels


@lru_cache(maxsize=16)
def complex_program(T) -> ExponentProgram:
    """整个复形的 Σ ε(S)·Z(S)：边变量 "e<下标>"，三角形变量 "t<下标>"

    公共子表达式（同一条边、同一个 α⁰ 字母）在求值时只计算一次。
    """
    local = simplex_program()
    terms = []
    for facet, sign in zip(T.facets, T.eps):
        mapping = {}
        for p, q in SIMPLEX_EDGES:
            mapping[edge_var(p, q)] = f"e{T.edge_index[(facet[p], facet[q])]}"
        for p, q, r in SIMPLEX_TRIANGLES:
            mapping[face_var(p, q, r)] = f"t{T.triangle_index[(facet[p], facet[q], facet[r])]}"
        terms += local.renamed(mapping).scaled(sign).terms
    return ExponentProgram(tuple(terms))


def complex_bindings(g_rows: np.ndarray, h_rows: np.ndarray) -> dict[str, np.ndarray]:
    """(N, v1) 与 (N, 三角形数) 的标号数组转为 complex_program 的变量绑定"""
    bindings = {f"e{n}": g_rows[..., n] for n in range(g_rows.shape[-1])}
    bindings.update({f"t{n}": h_rows[..., n] for n in range(h_rows.shape[-1])})
    return bindings


__all__ = [
    "SIMPLEX_EDGES",
    "SIMPLEX_TETRAHEDRA",
    "SIMPLEX_TRIANGLES",
    "admissible_local_labellings",
    "complex_bindings",
    "complex_program",
    "edge_var",
    "face_var",
    "fifteen_j",
    "fifteen_j_program",
    "local_failures",
    "local_variables",
    "semiflat_relation",
    "simplex_factors",
    "simplex_program",
    "z_simplex",
]
