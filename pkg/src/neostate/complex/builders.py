"""内置三角剖分"""
import itertools
from importlib import resources
from pathlib import Path
from typing import Optional

from neostate.complex.triangulation import (
    OrderedTriangulation,
    load_triangulation,
    parse_triangulation,
    random_permutation,
    relabel_vertices,
    reverse_orientation,
    validate,
)
from neostate.core.config import locate_file
from neostate.core.errors import TriangulationError

# name -> (语法, 说明)
BUILTIN_COMPLEXES: dict[str, tuple[str, str]] = {
    "s4": ("s4", "boundary of the 5-simplex, 6 vertices"),
    "s4-cross": ("s4-cross", "boundary of the 5-dimensional cross-polytope, 10 vertices"),
    "cp2": ("cp2", "Kühnel's 9-vertex complex projective plane"),
    "s3xs1": ("s3xs1:<layers>", "boundary of the 4-simplex times a circle"),
    "rp3xs1": ("rp3xs1:<layers>", "40-vertex RP3 times a circle"),
    "file": ("file:<path>", "triangulation file (dim / vertices / facet lines)"),
}
MODIFIERS: dict[str, str] = {
    "reversed": "append '/reversed' to flip the orientation",
    "relabel": "append '/relabel:<seed>' to permute the vertex order",
}


def boundary_of_simplex(d: int) -> OrderedTriangulation:
    """(d+1)-单形的边界，d 维球面"""
    if d < 1:
        raise TriangulationError("dimension must be at least 1")
    return validate(itertools.combinations(range(d + 2), d + 1), name=f"S{d}")


def boundary_of_5simplex() -> OrderedTriangulation:
    T = boundary_of_simplex(4)
    return OrderedTriangulation(T.v0, T.facets, T.eps, name="s4")


def cross_polytope_s4() -> OrderedTriangulation:
    """5 维正轴体的边界；顶点 2i 为 +e_i，2i+1 为 −e_i"""
    facets = [
        tuple(2 * i + s for i, s in enumerate(signs))
        for signs in itertools.product((0, 1), repeat=5)
    ]
    return validate(facets, name="s4-cross")


def kuhnel_cp2() -> OrderedTriangulation:
    """9 顶点 CP²"""
    try:
        text = resources.files("neostate.complex").joinpath("data/cp2_9.txt").read_text("utf-8")
    except FileNotFoundError as e:
        raise TriangulationError("bundled CP2 facet data is missing") from e
    return parse_triangulation(text, name="cp2")


def product_with_circle(T: OrderedTriangulation, layers: int = 3) -> OrderedTriangulation:
    """T × S¹：每层是阶梯剖分的棱柱 T × I，最后一层与第一层相接

    顶点 (layer, v) 编号为 layer·v0 + v。
    """
    if layers < 3:
        raise TriangulationError("product_with_circle needs at least 3 layers")
    facets = []
    for layer in range(layers):
        bottom, top = layer * T.v0, ((layer + 1) % layers) * T.v0
        for facet in T.facets:
            for s in range(len(facet)):
                facets.append(
                    tuple(bottom + v for v in facet[: s + 1]) + tuple(top + v for v in facet[s:])
                )
    return validate(facets, T.v0 * layers, name=f"{T.name or 'M'}xs1:{layers}")


def rp3() -> OrderedTriangulation:
    """RP³：4 维正轴体边界模去对径映射后的重心重分

    商空间的胞腔是 (坐标集 I, 符号 s) 模 ±s 的等价类，取 s[0] = + 为代表；
    重心重分的顶点为这些胞腔（共 40 个），面片为极大旗（192 个）。
    """

    def canonical(coords: tuple[int, ...], signs: tuple[int, ...]):
        if signs[0] < 0:
            signs = tuple(-s for s in signs)
        return coords, signs

    cells = []
    for size in range(1, 5):
        for coords in itertools.combinations(range(4), size):
            for rest in itertools.product((1, -1), repeat=size - 1):
                cells.append((coords, (1,) + rest))
    index = {cell: n for n, cell in enumerate(cells)}

    facets = []
    for signs in itertools.product((1, -1), repeat=3):
        top_signs = (1,) + signs
        for order in itertools.permutations(range(4)):
            chain = []
            for size in range(1, 5):
                coords = tuple(sorted(order[:size]))
                chain.append(index[canonical(coords, tuple(top_signs[c] for c in coords))])
            facets.append(tuple(sorted(chain)))
    return validate(facets, len(cells), name="rp3")


def _base(name: str, params: list[str]) -> OrderedTriangulation:
    def layers() -> int:
        if len(params) > 1:
            raise TriangulationError(f"{name} takes one parameter")
        try:
            return int(params[0]) if params else 3
        except ValueError as e:
            raise TriangulationError(f"malformed layer count {params[0]!r}") from e

    if name == "s4":
        return boundary_of_5simplex()
    if name == "s4-cross":
        return cross_polytope_s4()
    if name == "cp2":
        return kuhnel_cp2()
    if name == "s3xs1":
        return product_with_circle(boundary_of_simplex(3), layers())
    if name == "rp3xs1":
        return product_with_circle(rp3(), layers())
    raise TriangulationError(f"unknown complex '{name}'")


def complex_from_spec(spec: str, search_dir: Optional[Path] = None) -> OrderedTriangulation:
    """按名称构造复形，例如 "cp2/reversed"、"s3xs1:3/relabel:7"

    file:<path> 的相对路径在当前目录找不到时到 search_dir 下查找。

    Raises:
        TriangulationError: 未知名称、参数或修饰符
    """
    head, *modifiers = spec.strip().split("/")
    name, _, rest = head.partition(":")
    if name == "file":
        # 路径中可能含 '/'，修饰符只能用 CLI 选项给出
        return load_triangulation(locate_file(spec.strip()[len("file:") :], search_dir))
    T = _base(name, [p for p in rest.split(",") if p] if rest else [])
    for modifier in modifiers:
        key, _, arg = modifier.partition(":")
        if key == "reversed":
            T = reverse_orientation(T)
        elif key == "relabel":
            try:
                seed = int(arg)
            except ValueError as e:
                raise TriangulationError(f"malformed relabel seed {arg!r}") from e
            T = relabel_vertices(T, random_permutation(T.v0, seed))
        else:
            raise TriangulationError(f"unknown modifier '{key}'")
    return T
