"""平坦 G 标号的枚举

边按字典序赋值。三角形 (a<b<c) 的约束 g_ac = g_bc·g_ab 在第三条边 (b,c)
赋值时即可检查；若存在这样的三角形，(b,c) 的值被强制，否则自由取值。
枚举以块为单位深度优先进行，每块是 (N, v1) 的下标数组。
"""
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

from neostate.algebra import FiniteGroup
from neostate.complex import OrderedTriangulation


@dataclass(frozen=True)
class _EdgeStep:
    edge: int
    # 强制时 (g_ac 下标, g_ab 下标)：g_bc = g_ac·g_ab⁻¹
    forced_by: Optional[tuple[int, int]]
    # 本边赋值后可检查的三角形 (ab, ac, bc)
    checks: tuple[tuple[int, int, int], ...]
    fixed: bool = False


def spanning_forest_edges(T: OrderedTriangulation) -> set[int]:
    """以每个连通分支的最小顶点为根的 BFS 生成树边"""
    adjacency: dict[int, list[tuple[int, int]]] = {v: [] for v in range(T.v0)}
    for n, (a, b) in enumerate(T.edges):
        adjacency[a].append((b, n))
        adjacency[b].append((a, n))
    seen: set[int] = set()
    tree: set[int] = set()
    for root in range(T.v0):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w, n in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    tree.add(n)
                    queue.append(w)
    return tree


def component_count(T: OrderedTriangulation) -> int:
    return T.v0 - len(spanning_forest_edges(T))


@lru_cache(maxsize=32)
def _plan(T: OrderedTriangulation, gauge_fix: bool) -> tuple[_EdgeStep, ...]:
    index = T.edge_index
    closing: dict[int, list[tuple[int, int, int]]] = {}
    for a, b, c in T.triangles:
        ab, ac, bc = index[(a, b)], index[(a, c)], index[(b, c)]
        closing.setdefault(max(ab, ac, bc), []).append((ab, ac, bc))
    tree = spanning_forest_edges(T) if gauge_fix else set()
    steps = []
    for n in range(len(T.edges)):
        checks = tuple(closing.get(n, ()))
        forced = None
        if n not in tree:
            for ab, ac, bc in checks:
                if bc == n:
                    forced = (ac, ab)
                    break
        steps.append(_EdgeStep(n, forced, checks, fixed=n in tree))
    return tuple(steps)


def flat_g_chunks(
    T: OrderedTriangulation, G: FiniteGroup, chunk_size: int = 4096, gauge_fix: bool = False
) -> Iterator[np.ndarray]:
    """按块产生全部平坦边标号

    Args:
        T: 三角剖分
        G: 群
        chunk_size: 块内行数的软上限
        gauge_fix: 把生成森林的边固定为单位元

    Yields:
        (N, v1) 的 int64 数组，每行一个平坦标号
    """
    steps = _plan(T, gauge_fix)
    mul, inv = G.mul, G.inv
    width = max(1, chunk_size // max(G.order, 1))

    def extend(rows: np.ndarray, pos: int) -> Iterator[np.ndarray]:
        while pos < len(steps):
            step = steps[pos]
            if step.fixed:
                rows[:, step.edge] = 0
            elif step.forced_by is not None:
                ac, ab = step.forced_by
                rows[:, step.edge] = mul[rows[:, ac], inv[rows[:, ab]]]
            else:
                if len(rows) > width:
                    for start in range(0, len(rows), width):
                        yield from extend(rows[start : start + width].copy(), pos)
                    return
                rows = np.repeat(rows, G.order, axis=0)
                rows[:, step.edge] = np.tile(np.arange(G.order), len(rows) // G.order)
            for ab, ac, bc in step.checks:
                rows = rows[rows[:, ac] == mul[rows[:, bc], rows[:, ab]]]
            if len(rows) == 0:
                return
            pos += 1
        yield rows

    yield from extend(np.zeros((1, len(steps)), dtype=np.int64), 0)


def enumerate_flat_g(
    T: OrderedTriangulation, G: FiniteGroup, gauge_fix: bool = False
) -> Iterator[tuple[int, ...]]:
    """逐个产生平坦边标号（按边下标排列的元组）"""
    for chunk in flat_g_chunks(T, G, gauge_fix=gauge_fix):
        for row in chunk:
            yield tuple(int(x) for x in row)


def count_flat_g(T: OrderedTriangulation, G: FiniteGroup, gauge_fix: bool = False) -> int:
    return sum(len(chunk) for chunk in flat_g_chunks(T, G, gauge_fix=gauge_fix))
