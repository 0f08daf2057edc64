"""2-等价数据

EquivalenceData 保存 G、H 的自同构、系数环的 Galois 自同构 ζ_m ↦ ζ_m^t
以及五个映射：μ: H²→μ_m，Φ: G²→H，φ: G³→μ_m，ψ: H×G→μ_m，χ: G×H→μ_m。
"""
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Union

import numpy as np
import yaml

from neostate.core.errors import StructureError
from neostate.labelling import Labelling
from neostate.structure.semiweak import (
    SemiWeakStructure,
    format_entries,
    non_neutral_argument_mask,
    parse_entry,
    table_shape,
)

EQUIVALENCE_SIGNATURES: dict[str, str] = {
    "mu": "HH",
    "Phi": "GG",
    "phi": "GGG",
    "psi": "HG",
    "chi": "GH",
}


def _identity(n: int) -> tuple[int, ...]:
    return tuple(range(n))


@dataclass(frozen=True, eq=False)
class EquivalenceData:
    """一组 2-等价见证数据（均以下标和 ζ_m 指数存储）"""

    autG: tuple[int, ...]
    autH: tuple[int, ...]
    t: int
    m: int
    mu: np.ndarray
    Phi: np.ndarray
    phi: np.ndarray
    psi: np.ndarray
    chi: np.ndarray
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "autG", tuple(int(x) for x in self.autG))
        object.__setattr__(self, "autH", tuple(int(x) for x in self.autH))
        for key in EQUIVALENCE_SIGNATURES:
            arr = np.asarray(getattr(self, key), dtype=np.int64)
            if key != "Phi":
                arr = arr % self.m
            arr = arr.copy()
            arr.setflags(write=False)
            object.__setattr__(self, key, arr)

    @classmethod
    def zeros(cls, S: SemiWeakStructure, **overrides: Any) -> "EquivalenceData":
        """恒等自同构加全零映射，overrides 覆盖任意字段"""
        tables = {
            key: np.zeros(table_shape(sig, S.G, S.H), dtype=np.int64)
            for key, sig in EQUIVALENCE_SIGNATURES.items()
        }
        fields = {
            "autG": _identity(S.G.order),
            "autH": _identity(S.H.order),
            "t": 1,
            "m": S.m,
            **tables,
        }
        fields.update(overrides)
        return cls(**fields)

    def table(self, key: str) -> np.ndarray:
        if key not in EQUIVALENCE_SIGNATURES:
            raise KeyError(f"unknown equivalence map '{key}'")
        return getattr(self, key)

    def with_maps(self, **updates: Any) -> "EquivalenceData":
        return replace(self, **updates)

    @property
    def is_identity_automorphisms(self) -> bool:
        return (
            self.autG == _identity(len(self.autG))
            and self.autH == _identity(len(self.autH))
            and self.t % self.m == 1 % self.m
        )

    def failures(self, S: SemiWeakStructure) -> list[str]:
        """自同构合法性与各映射的规范化检查

        Returns:
            错误描述列表，空表示数据本身合法
        """
        out = []
        G, H = S.G, S.H
        autG = np.asarray(self.autG, dtype=np.int64)
        autH = np.asarray(self.autH, dtype=np.int64)
        if sorted(self.autG) != list(range(G.order)):
            out.append("autG is not a bijection of G")
        elif not np.array_equal(autG[G.mul], G.mul[autG[:, None], autG[None, :]]):
            out.append("autG is not a group homomorphism")
        if sorted(self.autH) != list(range(H.order)):
            out.append("autH is not a bijection of H")
        elif not np.array_equal(autH[H.add_table], H.add_table[autH[:, None], autH[None, :]]):
            out.append("autH is not a group homomorphism")
        if self.m != S.m:
            out.append(f"root order {self.m} differs from the structure's {S.m}")
        if math.gcd(self.t, self.m) != 1:
            out.append(f"t={self.t} is not a unit mod {self.m}")
        for key, sig in EQUIVALENCE_SIGNATURES.items():
            arr = self.table(key)
            if arr.shape != table_shape(sig, G, H):
                out.append(f"{key} has shape {arr.shape}")
                continue
            if arr.size == 0:
                continue
            bad = np.argwhere(non_neutral_argument_mask(arr.shape) & (arr != 0))
            if len(bad):
                args = tuple(int(a) for a in bad[0])
                out.append(f"{key}{args} = {int(arr[args])} is not neutral")
        return out


def identity_data(S: SemiWeakStructure) -> EquivalenceData:
    """S 与自身之间的恒等见证"""
    return EquivalenceData.zeros(S, name="identity")


def transport_labelling(E: EquivalenceData, T, labelling, H):
    """g ↦ ḡ，h_ijk ↦ h̄_ijk + Φ(g_jk, g_ij)：把 S 的可容许标号映到 S' 的

    Args:
        E: 见证
        T: 三角剖分
        labelling: S 的可容许标号
        H: 系数群（用于 H 中的加法）
    """
    g = tuple(E.autG[x] for x in labelling.g)
    h = []
    for n, (i, j, k) in enumerate(T.triangles):
        g_jk = labelling.g[T.edge_index[(j, k)]]
        g_ij = labelling.g[T.edge_index[(i, j)]]
        h.append(H.add(E.autH[labelling.h[n]], int(E.Phi[g_jk, g_ij])))
    return Labelling(T, g, tuple(h))


# ---------------------------------------------------------------------------
# 文件格式
# ---------------------------------------------------------------------------

def equivalence_to_data(E: EquivalenceData, S: SemiWeakStructure) -> dict[str, Any]:
    maps = {}
    for key, sig in EQUIVALENCE_SIGNATURES.items():
        lines = format_entries(E.table(key), sig, "H" if key == "Phi" else "phase", S.H)
        if lines:
            maps[key] = lines
    return {
        "name": E.name,
        "autG": list(E.autG),
        "autH": list(E.autH),
        "t": E.t,
        "m": E.m,
        "maps": maps,
    }


def equivalence_from_data(data: dict[str, Any], S: SemiWeakStructure) -> EquivalenceData:
    """按 S 的群解析见证数据，缺省的映射取中性值"""
    if not isinstance(data, dict):
        raise StructureError("equivalence file must contain a mapping")
    G, H = S.G, S.H
    tables = {
        key: np.zeros(table_shape(sig, G, H), dtype=np.int64)
        for key, sig in EQUIVALENCE_SIGNATURES.items()
    }
    for key, lines in (data.get("maps") or {}).items():
        if key not in EQUIVALENCE_SIGNATURES:
            raise StructureError(f"unknown map section '{key}'")
        for line in lines:
            args, value = parse_entry(
                str(line), EQUIVALENCE_SIGNATURES[key], "H" if key == "Phi" else "phase", G, H
            )
            tables[key][args] = value
    return EquivalenceData(
        autG=tuple(data.get("autG") or _identity(G.order)),
        autH=tuple(data.get("autH") or _identity(H.order)),
        t=int(data.get("t", 1)),
        m=int(data.get("m", S.m)),
        name=str(data.get("name") or ""),
        **tables,
    )


def load_equivalence(path: Union[str, Path], S: SemiWeakStructure) -> EquivalenceData:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"equivalence file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise StructureError(f"malformed equivalence file {path}: {e}") from e
    return equivalence_from_data(data, S)


def dump_equivalence(E: EquivalenceData, S: SemiWeakStructure, path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(equivalence_to_data(E, S), f, sort_keys=False, allow_unicode=True)
