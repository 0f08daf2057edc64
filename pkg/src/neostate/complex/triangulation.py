"""顶点有序的闭可定向三角剖分

ε(S) 比较面片顶点升序诱导的定向与全局定向；全局定向由第一个面片
（每个连通分支的第一个）取正并沿公共余一维面传播确定。
"""
import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from neostate.core.errors import TriangulationError

Simplex = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class OrderedTriangulation:
    """闭定向单纯复形，面片为升序顶点元组

    Args:
        v0: 顶点数
        facets: 面片列表（升序元组）
        eps: 每个面片的定向符号 ±1
        name: 显示名称
    """

    v0: int
    facets: tuple[Simplex, ...]
    eps: tuple[int, ...]
    name: str = field(default="", compare=False)

    @property
    def dim(self) -> int:
        return len(self.facets[0]) - 1

    def faces(self, k: int) -> tuple[Simplex, ...]:
        """全部 k 维面，按字典序"""
        if k == self.dim:
            return tuple(sorted(self.facets))
        out = {face for facet in self.facets for face in itertools.combinations(facet, k + 1)}
        return tuple(sorted(out))

    @cached_property
    def edges(self) -> tuple[Simplex, ...]:
        return self.faces(1)

    @cached_property
    def triangles(self) -> tuple[Simplex, ...]:
        return self.faces(2)

    @cached_property
    def tetrahedra(self) -> tuple[Simplex, ...]:
        return self.faces(3)

    @cached_property
    def edge_index(self) -> dict[Simplex, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def triangle_index(self) -> dict[Simplex, int]:
        return {t: i for i, t in enumerate(self.triangles)}

    @cached_property
    def tetrahedron_index(self) -> dict[Simplex, int]:
        return {t: i for i, t in enumerate(self.tetrahedra)}

    @property
    def v1(self) -> int:
        return len(self.edges)

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        return tuple([self.v0] + [len(self.faces(k)) for k in range(1, self.dim + 1)])

    def boundary_chain(self) -> dict[Simplex, int]:
        """Σ ε(S)·∂S，闭复形上应全部为零"""
        chain: dict[Simplex, int] = {}
        for facet, sign in zip(self.facets, self.eps):
            for p in range(len(facet)):
                ridge = facet[:p] + facet[p + 1 :]
                chain[ridge] = chain.get(ridge, 0) + sign * (-1) ** p
        return chain

    def check(self) -> tuple[bool, list[str]]:
        """重新检查闭性与定向一致性"""
        errors = [f"ridge {r} has boundary coefficient {c}" for r, c in self.boundary_chain().items() if c]
        return not errors, errors

    def __str__(self) -> str:
        label = self.name or "complex"
        return f"{label} (dim {self.dim}, f-vector {self.f_vector})"


def _normalize_facets(facets: Iterable[Sequence[int]]) -> list[Simplex]:
    out = []
    for facet in facets:
        simplex = tuple(sorted(int(v) for v in facet))
        if len(set(simplex)) != len(simplex):
            raise TriangulationError(f"facet {tuple(facet)} repeats a vertex")
        out.append(simplex)
    return out


def _orient(facets: list[Simplex]) -> list[int]:
    """沿公共余一维面传播定向，返回每个面片的 ε"""
    ridges: dict[Simplex, list[tuple[int, int]]] = {}
    for n, facet in enumerate(facets):
        for p in range(len(facet)):
            ridges.setdefault(facet[:p] + facet[p + 1 :], []).append((n, p))
    for ridge, owners in ridges.items():
        if len(owners) != 2:
            raise TriangulationError(
                f"tetrahedron with facet count ≠ 2: {ridge} lies in {len(owners)} facets"
            )

    eps = [0] * len(facets)
    for start in range(len(facets)):
        if eps[start]:
            continue
        eps[start] = 1
        queue = deque([start])
        while queue:
            n = queue.popleft()
            facet = facets[n]
            for p in range(len(facet)):
                (a, pa), (b, pb) = ridges[facet[:p] + facet[p + 1 :]]
                other, q = (b, pb) if a == n else (a, pa)
                want = -eps[n] * (-1) ** (p + q)
                if eps[other] == 0:
                    eps[other] = want
                    queue.append(other)
                elif eps[other] != want:
                    raise TriangulationError(
                        "orientation propagation inconsistency (non-orientable)"
                    )
    return eps


def validate(
    facets: Iterable[Sequence[int]], v0: Optional[int] = None, name: str = ""
) -> OrderedTriangulation:
    """检查面片列表并计算定向

    Args:
        facets: 面片顶点列表，顶点为 0..v0-1
        v0: 顶点数，默认取最大顶点加一
        name: 显示名称

    Returns:
        OrderedTriangulation

    Raises:
        TriangulationError: 非闭、不可定向、重复面片或顶点越界
    """
    facets = _normalize_facets(facets)
    if not facets:
        raise TriangulationError("empty facet list")
    dims = {len(f) for f in facets}
    if len(dims) != 1:
        raise TriangulationError(f"facets of mixed sizes {sorted(dims)}")
    if len(set(facets)) != len(facets):
        raise TriangulationError("duplicate facets")
    used = {v for f in facets for v in f}
    if min(used) < 0:
        raise TriangulationError("negative vertex index")
    v0 = max(used) + 1 if v0 is None else v0
    if max(used) >= v0:
        raise TriangulationError(f"vertex {max(used)} out of range for {v0} vertices")
    if len(used) != v0:
        missing = sorted(set(range(v0)) - used)
        raise TriangulationError(f"vertices {missing[:5]} are not used by any facet")
    facets.sort()
    eps = _orient(facets)
    return OrderedTriangulation(v0=v0, facets=tuple(facets), eps=tuple(eps), name=name)


def reverse_orientation(T: OrderedTriangulation) -> OrderedTriangulation:
    return OrderedTriangulation(
        v0=T.v0,
        facets=T.facets,
        eps=tuple(-e for e in T.eps),
        name=f"-{T.name}" if not T.name.startswith("-") else T.name[1:],
    )


def _permutation_sign(values: Sequence[int]) -> int:
    sign = 1
    values = list(values)
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if values[i] > values[j]:
                sign = -sign
    return sign


def relabel_vertices(T: OrderedTriangulation, permutation: Sequence[int]) -> OrderedTriangulation:
    """顶点改名为 permutation[v]，保持全局定向类"""
    perm = [int(p) for p in permutation]
    if sorted(perm) != list(range(T.v0)):
        raise TriangulationError("relabelling must be a permutation of the vertices")
    images = []
    for facet, sign in zip(T.facets, T.eps):
        mapped = [perm[v] for v in facet]
        images.append((tuple(sorted(mapped)), sign * _permutation_sign(mapped)))
    images.sort()
    relabelled = validate([f for f, _ in images], T.v0, name=T.name)
    eps = tuple(s for _, s in images)
    out = OrderedTriangulation(v0=T.v0, facets=relabelled.facets, eps=eps, name=T.name)
    ok, errors = out.check()
    if not ok:
        raise TriangulationError("relabelled orientation is inconsistent: " + errors[0])
    return out


def random_permutation(v0: int, seed: int) -> tuple[int, ...]:
    rng = np.random.default_rng(seed)
    return tuple(int(v) for v in rng.permutation(v0))


# ---------------------------------------------------------------------------
# 文件格式：dim d / vertices N / 每行一个面片，'#' 开头为注释
# ---------------------------------------------------------------------------

def parse_triangulation(text: str, name: str = "") -> OrderedTriangulation:
    dim: Optional[int] = None
    v0: Optional[int] = None
    reversed_ = False
    facets: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        try:
            if head == "dim":
                dim = int(rest[0])
            elif head == "vertices":
                v0 = int(rest[0])
            elif head == "orientation":
                reversed_ = rest[0] == "reversed"
            else:
                facets.append([int(x) for x in line.split()])
        except (ValueError, IndexError) as e:
            raise TriangulationError(f"line {lineno}: cannot parse {raw!r}") from e
    if dim is not None and any(len(f) != dim + 1 for f in facets):
        raise TriangulationError(f"every facet must have {dim + 1} vertices")
    T = validate(facets, v0, name=name)
    return reverse_orientation(T) if reversed_ else T


def load_triangulation(path: Union[str, Path]) -> OrderedTriangulation:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"triangulation file not found: {path}")
    return parse_triangulation(path.read_text(encoding="utf-8"), name=path.stem)


def dump_triangulation(T: OrderedTriangulation, path: Union[str, Path]) -> None:
    lines = [f"dim {T.dim}", f"vertices {T.v0}"]
    if T.eps[0] < 0:
        lines.append("orientation reversed")
    lines += [" ".join(str(v) for v in facet) for facet in T.facets]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
