"""半弱幺半 2-范畴结构数据

七个结构映射都以稠密表存储：alpha0 的值是 H 的元素下标，
其余映射的值是 ζ_m 的指数（模 m 的整数）。
"""
import itertools
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
import yaml

from neostate.algebra import (
    Cyclotomic,
    FiniteAbelianGroup,
    FiniteGroup,
    cyclic_group,
    direct_product,
    root_of_unity,
)
from neostate.core.errors import StructureError

# 每个映射的参数类型：G 表示 G 的元素，H 表示 H 的元素
MAP_SIGNATURES: dict[str, str] = {
    "alpha0": "GGG",
    "pi": "GGGG",
    "alpha1": "HHH",
    "tau": "HH",
    "iota1": "HGG",
    "iota2": "GHG",
    "iota3": "GGH",
}
PHASE_MAPS = ("pi", "alpha1", "tau", "iota1", "iota2", "iota3")


class IdentityName(str, Enum):
    """结构映射需要满足的相干恒等式"""

    OBJ4 = "OBJ4"
    MOR4 = "MOR4"
    HEX = "HEX"
    PENT5 = "PENT5"
    I1_COCYCLE = "I1-COCYCLE"
    I2_RIGHT = "I2-RIGHT"
    I2_LEFT = "I2-LEFT"
    I3_COCYCLE = "I3-COCYCLE"
    I1_MULT = "I1-MULT"
    I2_MULT = "I2-MULT"
    I3_MULT = "I3-MULT"


def table_shape(signature: str, G: FiniteGroup, H: FiniteAbelianGroup) -> tuple[int, ...]:
    return tuple(G.order if c == "G" else H.order for c in signature)


def non_neutral_argument_mask(shape: tuple[int, ...]) -> np.ndarray:
    """参数中含单位元的位置掩码"""
    grids = np.indices(shape)
    return np.any(grids == 0, axis=0)


@dataclass(frozen=True, eq=False)
class SemiWeakStructure:
    """结构 (α⁰, π, α¹, τ, ι¹, ι², ι³) 及单位根阶 m"""

    G: FiniteGroup
    H: FiniteAbelianGroup
    m: int
    alpha0: np.ndarray
    pi: np.ndarray
    alpha1: np.ndarray
    tau: np.ndarray
    iota1: np.ndarray
    iota2: np.ndarray
    iota3: np.ndarray
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.m < 1:
            raise StructureError(f"root order m must be positive, got {self.m}")
        for key, signature in MAP_SIGNATURES.items():
            arr = np.asarray(getattr(self, key), dtype=np.int64)
            expected = table_shape(signature, self.G, self.H)
            if arr.shape != expected:
                raise StructureError(f"{key} has shape {arr.shape}, expected {expected}")
            if key == "alpha0":
                if arr.size and (arr.min() < 0 or arr.max() >= self.H.order):
                    raise StructureError("alpha0 values must be element indices of H")
            else:
                arr = arr % self.m
            arr = arr.copy()
            arr.setflags(write=False)
            object.__setattr__(self, key, arr)

    @classmethod
    def neutral(
        cls, G: FiniteGroup, H: FiniteAbelianGroup, m: int = 1, name: str = ""
    ) -> "SemiWeakStructure":
        tables = {
            key: np.zeros(table_shape(sig, G, H), dtype=np.int64)
            for key, sig in MAP_SIGNATURES.items()
        }
        return cls(G=G, H=H, m=m, name=name, **tables)

    def table(self, key: str) -> np.ndarray:
        if key not in MAP_SIGNATURES:
            raise KeyError(f"unknown structural map '{key}'")
        return getattr(self, key)

    def tables(self) -> dict[str, np.ndarray]:
        return {key: getattr(self, key) for key in MAP_SIGNATURES}

    def with_maps(self, name: Optional[str] = None, **updates: np.ndarray) -> "SemiWeakStructure":
        unknown = set(updates) - set(MAP_SIGNATURES)
        if unknown:
            raise StructureError(f"unknown structural maps: {sorted(unknown)}")
        return replace(self, name=self.name if name is None else name, **updates)

    def lifted(self, m: int) -> "SemiWeakStructure":
        """把所有相位提升到 μ_M（要求 m | M）"""
        if m % self.m:
            raise StructureError(f"cannot lift root order {self.m} to {m}")
        factor = m // self.m
        phases = {key: getattr(self, key) * factor for key in PHASE_MAPS}
        return replace(self, m=m, **phases)

    @property
    def is_g_trivial(self) -> bool:
        return self.G.order == 1

    @property
    def is_h_trivial(self) -> bool:
        return self.H.order == 1

    def is_trivial_map(self, key: str) -> bool:
        return not np.any(self.table(key))

    def normalization_failures(self) -> list[str]:
        """列出参数含单位元却取非中性值的位置

        Returns:
            错误描述列表，空表示全部规范化
        """
        failures = []
        for key in MAP_SIGNATURES:
            arr = self.table(key)
            if arr.size == 0:
                continue
            bad = np.argwhere(non_neutral_argument_mask(arr.shape) & (arr != 0))
            if len(bad):
                args = tuple(int(a) for a in bad[0])
                failures.append(f"{key}{args} = {int(arr[args])} is not neutral")
        return failures

    def is_normalized(self) -> bool:
        return not self.normalization_failures()

    def value(self, key: str, *args: int) -> Cyclotomic:
        """相位映射在给定参数上的精确值"""
        if key == "alpha0":
            raise StructureError("alpha0 takes values in H, not in the ring")
        return root_of_unity(self.m, int(self.table(key)[args]))

    def same_shape(self, other: "SemiWeakStructure") -> bool:
        return self.G == other.G and self.H == other.H

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SemiWeakStructure) or not self.same_shape(other):
            return False
        m = math.lcm(self.m, other.m)
        a, b = self.lifted(m), other.lifted(m)
        return all(np.array_equal(a.table(k), b.table(k)) for k in MAP_SIGNATURES)

    __hash__ = None

    def __str__(self) -> str:
        label = self.name or "structure"
        return f"{label} (G order {self.G.order}, H {self.H}, m {self.m})"


# ---------------------------------------------------------------------------
# 文本格式
# ---------------------------------------------------------------------------

def format_h(H: FiniteAbelianGroup, index: int) -> str:
    comps = H.element(index)
    return ",".join(str(c) for c in comps) if comps else "0"


def parse_h(H: FiniteAbelianGroup, token: str) -> int:
    parts = [int(p) for p in token.split(",") if p != ""]
    if H.rank == 0:
        if any(parts):
            raise StructureError(f"H is trivial, got element {token!r}")
        return 0
    if len(parts) != H.rank:
        raise StructureError(f"H element {token!r} needs {H.rank} components")
    return H.index(parts)


def parse_g(G: FiniteGroup, token: str) -> int:
    value = int(token)
    if not 0 <= value < G.order:
        raise StructureError(f"G element {token!r} out of range 0..{G.order - 1}")
    return value


def parse_entry(
    line: str, signature: str, value_kind: str, G: FiniteGroup, H: FiniteAbelianGroup
) -> tuple[tuple[int, ...], int]:
    """解析 'args -> value' 形式的一行

    Args:
        line: 文本行
        signature: 参数类型串，如 "HGG"
        value_kind: "H" 表示值为 H 元素，"phase" 表示指数
    """
    if "->" not in line:
        raise StructureError(f"entry {line!r} lacks '->'")
    lhs, rhs = (part.strip() for part in line.split("->", 1))
    tokens = lhs.split()
    if len(tokens) != len(signature):
        raise StructureError(f"entry {line!r} needs {len(signature)} arguments")
    args = tuple(parse_g(G, t) if c == "G" else parse_h(H, t) for c, t in zip(signature, tokens))
    value = parse_h(H, rhs) if value_kind == "H" else int(rhs)
    return args, value


def format_entries(
    table: np.ndarray, signature: str, value_kind: str, H: FiniteAbelianGroup
) -> list[str]:
    lines = []
    for args in itertools.product(*(range(n) for n in table.shape)):
        value = int(table[args])
        if value == 0:
            continue
        lhs = " ".join(str(a) if c == "G" else format_h(H, a) for c, a in zip(signature, args))
        rhs = format_h(H, value) if value_kind == "H" else str(value)
        lines.append(f"{lhs} -> {rhs}")
    return lines


def group_from_data(data: Any) -> FiniteGroup:
    """解析 G 的描述：整数、{cyclic: n}、{cyclic: [n1, n2]} 或 {table: [[...]]}"""
    if isinstance(data, int):
        return cyclic_group(data)
    if not isinstance(data, dict):
        raise StructureError(f"cannot parse group description {data!r}")
    if "table" in data:
        try:
            return FiniteGroup(np.array(data["table"], dtype=np.int64))
        except ValueError as e:
            raise StructureError(f"invalid group table: {e}") from e
    orders = data.get("cyclic", 1)
    orders = [orders] if isinstance(orders, int) else list(orders)
    group = cyclic_group(orders[0]) if orders else cyclic_group(1)
    for n in orders[1:]:
        group = direct_product(group, cyclic_group(n))
    return group


def group_to_data(G: FiniteGroup) -> dict[str, Any]:
    ids = np.arange(G.order)
    if np.array_equal(G.mul, (ids[:, None] + ids[None, :]) % G.order):
        return {"cyclic": G.order}
    return {"table": G.mul.tolist()}


def abelian_from_data(data: Any) -> FiniteAbelianGroup:
    if isinstance(data, int):
        return FiniteAbelianGroup((data,))
    if isinstance(data, dict):
        data = data.get("cyclic", [1])
    if isinstance(data, int):
        data = [data]
    return FiniteAbelianGroup(tuple(int(n) for n in data))


def structure_to_data(S: SemiWeakStructure) -> dict[str, Any]:
    maps = {}
    for key, sig in MAP_SIGNATURES.items():
        lines = format_entries(S.table(key), sig, "H" if key == "alpha0" else "phase", S.H)
        if lines:
            maps[key] = lines
    return {
        "name": S.name,
        "G": group_to_data(S.G),
        "H": {"cyclic": list(S.H.cyclic_orders)},
        "m": S.m,
        "maps": maps,
    }


def structure_from_data(data: dict[str, Any]) -> SemiWeakStructure:
    if not isinstance(data, dict):
        raise StructureError("structure file must contain a mapping")
    G = group_from_data(data.get("G", 1))
    H = abelian_from_data(data.get("H", 1))
    m = int(data.get("m", 1))
    tables = {
        key: np.zeros(table_shape(sig, G, H), dtype=np.int64) for key, sig in MAP_SIGNATURES.items()
    }
    for key, lines in (data.get("maps") or {}).items():
        if key not in MAP_SIGNATURES:
            raise StructureError(f"unknown map section '{key}'")
        for line in lines:
            args, value = parse_entry(
                str(line), MAP_SIGNATURES[key], "H" if key == "alpha0" else "phase", G, H
            )
            tables[key][args] = value
    return SemiWeakStructure(G=G, H=H, m=m, name=str(data.get("name") or ""), **tables)


def load_structure(path: Union[str, Path]) -> SemiWeakStructure:
    """从 YAML 文件加载结构"""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"structure file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise StructureError(f"malformed structure file {path}: {e}") from e
    S = structure_from_data(data)
    return S if S.name else replace(S, name=path.stem)


def dump_structure(S: SemiWeakStructure, path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(structure_to_data(S), f, sort_keys=False, allow_unicode=True)


def parse_params(text: str) -> list[int]:
    return [int(p) for p in text.split(",") if p.strip() != ""] if text else []


def check_range(label: str, value: int, low: int, high: int) -> None:
    if not low <= value <= high:
        raise StructureError(f"{label}={value} out of range [{low}, {high}]")
