"""三角形 H 标号的半平坦方程组

每个四面体 (abcd) 一个方程 h_bcd − h_acd + h_abd − h_abc = α⁰(g_cd, g_bc, g_ab)。
系统按 H 的循环因子拆开，每个因子一次 Smith 分解，之后对任意多个
右端批量求解。
"""
import weakref
from dataclasses import dataclass
from typing import Optional

import numpy as np

from neostate.algebra import FiniteAbelianGroup, KernelGroup, ModularSolver
from neostate.complex import OrderedTriangulation
from neostate.core.errors import LabellingError


def coboundary_matrix(T: OrderedTriangulation) -> np.ndarray:
    """(四面体数, 三角形数) 的整数矩阵"""
    index = T.triangle_index
    A = np.zeros((len(T.tetrahedra), len(T.triangles)), dtype=np.int64)
    for row, (a, b, c, d) in enumerate(T.tetrahedra):
        A[row, index[(b, c, d)]] += 1
        A[row, index[(a, c, d)]] -= 1
        A[row, index[(a, b, d)]] += 1
        A[row, index[(a, b, c)]] -= 1
    return A


@dataclass(frozen=True, eq=False)
class HSolutionSpace:
    """固定平坦 g 下的全部可容许三角形标号：特解加核

    Args:
        H: 系数群
        particular: (三角形数, rank) 的分量数组
        kernel: 展平到 (三角形数·rank) 坐标的核群
    """

    H: FiniteAbelianGroup
    particular: np.ndarray
    kernel: KernelGroup

    @property
    def order(self) -> int:
        return self.kernel.order

    def components_chunk(self, start: int, stop: int) -> np.ndarray:
        """第 start..stop 个解的分量 (N, 三角形数, rank)"""
        F, r = self.particular.shape
        flat = self.kernel.elements_chunk(start, stop)
        shift = flat.reshape(flat.shape[0], F, r)
        return self.particular[None, :, :] + shift

    def labels_chunk(self, start: int, stop: int) -> np.ndarray:
        """第 start..stop 个解的 H 元素下标 (N, 三角形数)"""
        comps = self.components_chunk(start, stop)
        if self.H.rank == 0:
            return np.zeros(comps.shape[:2], dtype=np.int64)
        return self.H.index_array(comps)

    def particular_labels(self) -> np.ndarray:
        return self.labels_chunk(0, 1)[0]


class CoboundarySystem:
    """复形 T 上系数为 H 的半平坦方程组"""

    def __init__(self, T: OrderedTriangulation, H: FiniteAbelianGroup):
        # 不持有 T 本身，缓存以 T 为弱引用键
        self.edge_count = len(T.edges)
        self.H = H
        self.A = coboundary_matrix(T)
        self.faces = len(T.triangles)
        self.solvers = [ModularSolver(self.A, n) for n in H.cyclic_orders]
        self.kernel = self._combined_kernel()
        index = T.edge_index
        self._alpha_edges = np.array(
            [(index[(c, d)], index[(b, c)], index[(a, b)]) for a, b, c, d in T.tetrahedra],
            dtype=np.int64,
        ).reshape(-1, 3)

    def _combined_kernel(self) -> KernelGroup:
        F, r = self.faces, self.H.rank
        gens, orders = [], []
        for comp, solver in enumerate(self.solvers):
            for gen, order in zip(solver.kernel.generators, solver.kernel.orders):
                vec = np.zeros((F, r), dtype=np.int64)
                vec[:, comp] = gen
                gens.append(vec.reshape(-1))
                orders.append(order)
        generators = np.array(gens, dtype=np.int64).reshape(len(gens), F * r)
        return KernelGroup(generators=generators, orders=tuple(orders), modulus=self.H.exponent)

    @property
    def kernel_order(self) -> int:
        return self.kernel.order

    def right_hand_sides(self, alpha0: np.ndarray, g_rows: np.ndarray) -> np.ndarray:
        """α⁰(g_cd, g_bc, g_ab) 的分量 (N, 四面体数, rank)"""
        g_rows = np.asarray(g_rows, dtype=np.int64).reshape(-1, self.edge_count)
        e = self._alpha_edges
        values = alpha0[g_rows[:, e[:, 0]], g_rows[:, e[:, 1]], g_rows[:, e[:, 2]]]
        return self.H.components[values]

    def solve_many(self, alpha0: np.ndarray, g_rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """批量求特解

        Returns:
            (particulars (N, 三角形数, rank), solvable 掩码 (N,))
        """
        rhs = self.right_hand_sides(alpha0, g_rows)
        N = rhs.shape[0]
        out = np.zeros((N, self.faces, self.H.rank), dtype=np.int64)
        ok = np.ones(N, dtype=bool)
        for comp, solver in enumerate(self.solvers):
            X, good = solver.solve_many(rhs[:, :, comp])
            out[:, :, comp] = X
            ok &= good
        return out, ok

    def check_particulars(self, alpha0: np.ndarray, g_rows: np.ndarray, particulars: np.ndarray) -> None:
        """复核 δh = α⁰ 逐分量模循环阶成立，否则抛 LabellingError"""
        if len(g_rows) == 0:
            return
        rhs = self.right_hand_sides(alpha0, g_rows)
        lhs = np.einsum("tf,nfr->ntr", self.A, particulars)
        orders = np.asarray(self.H.cyclic_orders, dtype=np.int64)
        bad = np.any((lhs - rhs) % orders != 0, axis=(1, 2))
        if np.any(bad):
            row = int(np.argmax(bad))
            raise LabellingError(
                f"particular H labelling violates the semi-flat equations at g = {g_rows[row].tolist()}"
            )

    def solve(self, alpha0: np.ndarray, g_row) -> Optional[HSolutionSpace]:
        particulars, ok = self.solve_many(alpha0, np.asarray(g_row).reshape(1, -1))
        if not ok[0]:
            return None
        return HSolutionSpace(H=self.H, particular=particulars[0], kernel=self.kernel)


_SYSTEMS: "weakref.WeakKeyDictionary[OrderedTriangulation, dict[tuple[int, ...], CoboundarySystem]]" = (
    weakref.WeakKeyDictionary()
)


def coboundary_system(T: OrderedTriangulation, H: FiniteAbelianGroup) -> CoboundarySystem:
    """按 (复形, H 的循环因子) 缓存的方程组；复形被回收时条目随之消失"""
    per_complex = _SYSTEMS.setdefault(T, {})
    system = per_complex.get(H.cyclic_orders)
    if system is None:
        system = CoboundarySystem(T, H)
        per_complex[H.cyclic_orders] = system
    return system


def solve_h(
    T: OrderedTriangulation, H: FiniteAbelianGroup, alpha0: np.ndarray, g_row
) -> Optional[HSolutionSpace]:
    """固定平坦 g 时求全部可容许 H 标号；无解返回 None"""
    return coboundary_system(T, H).solve(alpha0, g_row)
