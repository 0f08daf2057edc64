"""Pachner 移动不变性的数值检验

在 5-单形的边界上枚举全部可容许局部标号（五条链边 g01…g45 与含顶点 0
的十个面自由，其余由平坦与半平坦条件导出），比较移动两侧的乘积：

3-3：逐点检验 Z(01235)·Z(01345)·Z(12345) = Z(02345)·Z(01245)·Z(01234)
2-4：对内部面 (014) 求和，Σ Π_B = #H·Π_A
1-5：对新边 (45) 与四个新面 (015)(025)(035)(045) 求和，Σ Π_B = #G·#H⁴·Π_A
"""
import itertools
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from neostate.algebra.cyclotomic import reduction_matrix
from neostate.core.errors import BudgetExceededError
from neostate.statesum.program import ExponentProgram
from neostate.statesum.simplex import (
    SIMPLEX_EDGES,
    SIMPLEX_TRIANGLES,
    edge_var,
    face_var,
    simplex_program,
)

MOVES = ("3-3", "2-4", "1-5")

VERTICES = tuple(range(6))
CHAIN_EDGES = tuple(edge_var(a, a + 1) for a in range(5))
ROOT_FACES = tuple(face_var(0, b, c) for b, c in itertools.combinations(range(1, 6), 2))

# 每个移动：求和变量与 (A 侧, B 侧) 的单形符号，单形以省略的顶点编号
_MOVES: dict[str, tuple[tuple[str, ...], dict[int, int], dict[int, int]]] = {
    "3-3": ((), {0: 1, 2: 1, 4: 1}, {1: 1, 3: 1, 5: 1}),
    "2-4": (("h014",), {4: 1, 1: -1}, {3: 1, 5: 1, 0: -1, 2: -1}),
    "1-5": (
        ("g45", "h015", "h025", "h035", "h045"),
        {5: 1},
        {0: 1, 1: -1, 2: 1, 3: -1, 4: 1},
    ),
}


@dataclass
class PachnerReport:
    """一次移动检验的结果"""

    move: str
    passed: bool
    checked: int
    counterexample: Optional[dict[str, int]] = None
    detail: str = ""
    extra: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "move": self.move,
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": self.counterexample,
            "detail": self.detail,
            **self.extra,
        }


def _facet_program(omit: int) -> ExponentProgram:
    facet = tuple(v for v in VERTICES if v != omit)
    mapping = {}
    for p, q in SIMPLEX_EDGES:
        mapping[edge_var(p, q)] = edge_var(facet[p], facet[q])
    for p, q, r in SIMPLEX_TRIANGLES:
        mapping[face_var(p, q, r)] = face_var(facet[p], facet[q], facet[r])
    return simplex_program().renamed(mapping)


def side_program(signs: dict[int, int]) -> ExponentProgram:
    """Σ sign·Z(省略 v 的单形)"""
    terms = []
    for omit, sign in sorted(signs.items()):
        terms += _facet_program(omit).scaled(sign).terms
    return ExponentProgram(tuple(terms))


def derive_labels(S, params: dict[str, np.ndarray]) -> dict[str, np.ndarray]:
    """由链边与含 0 的面导出 5-单形上全部标号"""
    G, H = S.G, S.H
    labels = dict(params)
    for a, b in itertools.combinations(VERTICES, 2):
        if b - a > 1:
            labels[edge_var(a, b)] = G.mul[labels[edge_var(b - 1, b)], labels[edge_var(a, b - 1)]]
    comps = H.components
    for a, b, c in itertools.combinations(range(1, 6), 3):
        # 四面体 (0abc)
        alpha = S.alpha0[labels[edge_var(b, c)], labels[edge_var(a, b)], labels[edge_var(0, a)]]
        total = (
            comps[alpha]
            + comps[labels[face_var(0, b, c)]]
            - comps[labels[face_var(0, a, c)]]
            + comps[labels[face_var(0, a, b)]]
        )
        labels[face_var(a, b, c)] = H.index_array(total) if H.rank else np.zeros_like(alpha)
    return labels


def _mixed_radix(start: int, stop: int, sizes: list[int]) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((len(sizes), len(idx)), dtype=np.int64)
    for n in range(len(sizes) - 1, -1, -1):
        out[n] = idx % sizes[n]
        idx //= sizes[n]
    return out


def pachner_oracle(
    S, move: str = "3-3", budget: int = 20_000_000, chunk_size: int = 1 << 16
) -> PachnerReport:
    """对给定结构检验一个 Pachner 移动

    Args:
        S: 结构
        move: "3-3"、"2-4" 或 "1-5"
        budget: 允许枚举的局部标号数上限
        chunk_size: 每块的标号数

    Returns:
        PachnerReport

    Raises:
        BudgetExceededError: 局部标号数超过 budget
    """
    if move not in _MOVES:
        raise ValueError(f"unknown Pachner move '{move}', expected one of {MOVES}")
    free, side_a, side_b = _MOVES[move]
    G, H, m = S.G, S.H, S.m
    variables = [v for v in CHAIN_EDGES + ROOT_FACES if v not in free] + list(free)
    sizes = [G.order if v.startswith("g") else H.order for v in variables]
    total = int(np.prod(sizes, dtype=object))
    if total > budget:
        raise BudgetExceededError(f"Pachner {move} enumeration", total, budget)

    block = int(np.prod([n for v, n in zip(variables, sizes) if v in free], dtype=object))
    chunk = max(block, (chunk_size // block) * block)
    program_a, program_b = side_program(side_a), side_program(side_b)
    factor = block
    red = reduction_matrix(m)

    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        grid = _mixed_radix(start, stop, sizes)
        params = {v: grid[n] for n, v in enumerate(variables)}
        labels = derive_labels(S, params)
        e_a = np.broadcast_to(program_a.evaluate(S, labels), (stop - start,))
        e_b = np.broadcast_to(program_b.evaluate(S, labels), (stop - start,))
        if not free:
            bad = np.flatnonzero(e_a != e_b)
        else:
            keys = (stop - start) // block
            rows = np.repeat(np.arange(keys), block)
            hist = np.bincount(rows * m + e_b, minlength=keys * m).reshape(keys, m)
            lhs = hist @ red
            rhs = factor * red[e_a.reshape(keys, block)[:, 0]]
            bad = np.flatnonzero(np.any(lhs != rhs, axis=1)) * block
        if len(bad):
            row = int(bad[0])
            witness = {
                v: int(grid[n][row]) for n, v in enumerate(variables) if v not in free
            }
            return PachnerReport(
                move=move,
                passed=False,
                checked=start + row,
                counterexample=witness,
                detail="the two sides of the move differ",
            )
    detail = "4-cocycle condition" if move == "3-3" else f"summed over {', '.join(free)}"
    return PachnerReport(move=move, passed=True, checked=total, detail=detail)


def pachner_all(S, budget: int = 20_000_000) -> list[PachnerReport]:
    return [pachner_oracle(S, move, budget) for move in MOVES]
