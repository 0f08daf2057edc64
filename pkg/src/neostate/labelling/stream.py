"""可容许标号的流式枚举与计数"""
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from neostate.complex import OrderedTriangulation
from neostate.core.errors import BudgetExceededError, LabellingError
from neostate.labelling.flat import flat_g_chunks
from neostate.labelling.hsystem import coboundary_system
from neostate.statesum.simplex import edge_var, face_var, local_failures


@dataclass(frozen=True)
class Labelling:
    """边上的 G 标号与三角形上的 H 标号（均为元素下标，按复形的面序排列）"""

    T: OrderedTriangulation
    g: tuple[int, ...]
    h: tuple[int, ...]

    def restrict(self, simplex: Sequence[int]) -> dict[str, int]:
        """单形上的局部标号，键为 "g01"、"h012" 等局部变量名"""
        simplex = tuple(simplex)
        out: dict[str, int] = {}
        for p in range(5):
            for q in range(p + 1, 5):
                out[edge_var(p, q)] = self.g[self.T.edge_index[(simplex[p], simplex[q])]]
                for r in range(q + 1, 5):
                    face = (simplex[p], simplex[q], simplex[r])
                    out[face_var(p, q, r)] = self.h[self.T.triangle_index[face]]
        return out

    def failures(self, S) -> list[str]:
        """在全部面片上检查局部半平坦条件"""
        out = []
        for facet in self.T.facets:
            out += [f"{facet}: {msg}" for msg in local_failures(S, self.restrict(facet))]
        return out

    def is_admissible(self, S) -> bool:
        return not self.failures(S)


class LabellingStream:
    """外层平坦 g、内层核陪集的嵌套流

    Args:
        T: 三角剖分
        S: 结构
        budget: 迭代前检查的标号总数上限，None 表示不限
        chunk_size: 块大小
    """

    def __init__(
        self,
        T: OrderedTriangulation,
        S,
        budget: Optional[int] = None,
        chunk_size: int = 4096,
        debug_checks: bool = False,
    ):
        self.T = T
        self.S = S
        self.budget = budget
        self.chunk_size = chunk_size
        self.debug_checks = debug_checks
        self.system = coboundary_system(T, S.H)
        self._count: Optional[int] = None

    def solvable_g_chunks(self) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        """(g 行, 特解分量) 对，只含可解的 g"""
        for chunk in flat_g_chunks(self.T, self.S.G, self.chunk_size):
            particulars, ok = self.system.solve_many(self.S.alpha0, chunk)
            if self.debug_checks:
                self.system.check_particulars(self.S.alpha0, chunk[ok], particulars[ok])
            if np.any(ok):
                yield chunk[ok], particulars[ok]

    def count(self) -> int:
        """不枚举 h 的精确总数"""
        if self._count is None:
            solvable = sum(len(rows) for rows, _ in self.solvable_g_chunks())
            self._count = solvable * self.system.kernel_order
        return self._count

    def check_budget(self) -> None:
        if self.budget is not None and self.count() > self.budget:
            raise BudgetExceededError(
                "labelling enumeration",
                self.count(),
                self.budget,
                hint="use a fast path (linear / quadratic / gray)",
            )

    def __iter__(self) -> Iterator[Labelling]:
        self.check_budget()
        kernel = self.system.kernel
        H = self.S.H
        for rows, particulars in self.solvable_g_chunks():
            for g_row, particular in zip(rows, particulars):
                g = tuple(int(x) for x in g_row)
                for start in range(0, kernel.order, self.chunk_size):
                    flat = kernel.elements_chunk(start, start + self.chunk_size)
                    comps = particular[None] + flat.reshape(flat.shape[0], *particular.shape)
                    labels = (
                        H.index_array(comps)
                        if H.rank
                        else np.zeros(comps.shape[:2], dtype=np.int64)
                    )
                    for h_row in labels:
                        labelling = Labelling(self.T, g, tuple(int(x) for x in h_row))
                        if self.debug_checks and not labelling.is_admissible(self.S):
                            raise LabellingError(f"inadmissible labelling with g={g}")
                        yield labelling

    def __len__(self) -> int:
        return self.count()


def enumerate_labellings(
    T: OrderedTriangulation, S, budget: Optional[int] = None, debug_checks: bool = False
) -> LabellingStream:
    return LabellingStream(T, S, budget=budget, debug_checks=debug_checks)


def count_labellings(T: OrderedTriangulation, S) -> int:
    """可容许标号总数"""
    return LabellingStream(T, S).count()
