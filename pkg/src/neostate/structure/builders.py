"""结构构造器：平凡结构、各类辫子型例子、五边形子与乘积"""
import math
from pathlib import Path
from typing import Optional, Union

import numpy as np

from neostate.algebra import FiniteAbelianGroup, FiniteGroup, cyclic_group
from neostate.core.config import locate_file
from neostate.core.errors import StructureError, VerificationError
from neostate.structure.identities import verify_all
from neostate.structure.semiweak import (
    PHASE_MAPS,
    SemiWeakStructure,
    check_range,
    load_structure,
    non_neutral_argument_mask,
    parse_params,
)

GroupLike = Union[int, FiniteGroup]
AbelianLike = Union[int, FiniteAbelianGroup]

# name -> (参数语法, 说明)
BUILTIN_STRUCTURES: dict[str, tuple[str, str]] = {
    "trivial": ("trivial:<|G|>,<|H|>[,m]", "all maps neutral (Yetter-type invariant)"),
    "br-tau": ("br-tau:<n>,<k>", "G=1, H=Z/n, tau(h1,h2)=z_n^(k h1 h2)"),
    "br-iota1": ("br-iota1:<n>,<k>", "G=H=Z/n, iota1 carries the Z/n^2 extension class, m=n^2"),
    "br-iota2": ("br-iota2:<n>,<k>", "G=H=Z/n, iota2(g1,h,g3)=z_n^(k g1 h g3)"),
    "pentagonator": (
        "pentagonator:<n>[,m[,seed]]",
        "H=1, G=Z/n, pi = coboundary of a seeded random 3-cochain",
    ),
    "semion": ("semion", "G=1, H=Z/2, m=4, alpha1(1,1,1)=z4^2, tau(1,1)=z4"),
    "combine": ("combine:<spec>+<spec>", "pointwise product of two structures, re-verified"),
    "file": ("file:<path>", "YAML structure file"),
}


def _as_group(G: GroupLike) -> FiniteGroup:
    return cyclic_group(G) if isinstance(G, int) else G


def _as_abelian(H: AbelianLike) -> FiniteAbelianGroup:
    if isinstance(H, int):
        return FiniteAbelianGroup((H,))
    return H


def require_verified(S: SemiWeakStructure) -> SemiWeakStructure:
    report = verify_all(S)
    if not report.passed:
        names = [c.name.value for c in report.failures()] + report.normalization
        raise VerificationError(f"{S.name or 'structure'} fails verification: " + ", ".join(names))
    return S


def trivial_structure(G: GroupLike = 1, H: AbelianLike = 1, m: int = 1) -> SemiWeakStructure:
    """所有映射取中性值"""
    G, H = _as_group(G), _as_abelian(H)
    return SemiWeakStructure.neutral(G, H, m, name=f"trivial:{G.order},{H.order}")


def br_tau(n: int, k: int) -> SemiWeakStructure:
    """G 平凡，H = Z/n，τ(h1, h2) = ζ_n^{k·h1·h2}

    Args:
        n: H 的阶，至少为 2
        k: 0 < k < n
    """
    check_range("n", n, 2, 10**6)
    check_range("k", k, 1, n - 1)
    S = SemiWeakStructure.neutral(cyclic_group(1), _as_abelian(n), n, name=f"br-tau:{n},{k}")
    h = np.arange(n)
    return S.with_maps(tau=(k * np.outer(h, h)) % n)


def br_iota1(n: int, k: int) -> SemiWeakStructure:
    """G = H = Z/n，ι¹(h, g1, g2) = ζ_{n²}^{k·h·(g1+g2−[g1+g2])}，m = n²"""
    check_range("n", n, 2, 10**6)
    check_range("k", k, 1, n * n - 1)
    m = n * n
    S = SemiWeakStructure.neutral(cyclic_group(n), _as_abelian(n), m, name=f"br-iota1:{n},{k}")
    h, g1, g2 = np.indices((n, n, n))
    carry = g1 + g2 - (g1 + g2) % n
    return S.with_maps(iota1=(k * h * carry) % m)


def br_iota2(n: int, k: int, verify: bool = True) -> SemiWeakStructure:
    """G = H = Z/n，ι²(g1, h, g3) = ζ_n^{k·g1·h·g3}；构造后完整验证"""
    check_range("n", n, 2, 10**6)
    check_range("k", k, 1, n - 1)
    S = SemiWeakStructure.neutral(cyclic_group(n), _as_abelian(n), n, name=f"br-iota2:{n},{k}")
    g1, h, g3 = np.indices((n, n, n))
    S = S.with_maps(iota2=(k * g1 * h * g3) % n)
    return require_verified(S) if verify else S


def braided_structure(
    H: AbelianLike, alpha1: np.ndarray, tau: np.ndarray, m: int, name: str = "braided"
) -> SemiWeakStructure:
    """G 平凡、只有 α¹ 与 τ 的结构"""
    S = SemiWeakStructure.neutral(cyclic_group(1), _as_abelian(H), m, name=name)
    return S.with_maps(alpha1=alpha1, tau=tau)


def semion_structure() -> SemiWeakStructure:
    """H = Z/2 上的半子型数据：α¹(1,1,1) = −1，τ(1,1) = i"""
    alpha1 = np.zeros((2, 2, 2), dtype=np.int64)
    alpha1[1, 1, 1] = 2
    tau = np.array([[0, 0], [0, 1]], dtype=np.int64)
    return braided_structure(2, alpha1, tau, 4, name="semion")


def random_normalized_cochain(
    shape: tuple[int, ...], modulus: int, rng: np.random.Generator
) -> np.ndarray:
    """参数含单位元处为零的随机表"""
    table = rng.integers(0, modulus, size=shape, dtype=np.int64)
    table[non_neutral_argument_mask(shape)] = 0
    return table


def coboundary_4cocycle(G: FiniteGroup, lam: np.ndarray, m: int) -> np.ndarray:
    """3-上链 λ 的上边缘 δλ: G⁴ → Z/m"""
    mul = G.mul
    g1, g2, g3, g4 = np.indices((G.order,) * 4)
    omega = (
        lam[g2, g3, g4]
        - lam[mul[g1, g2], g3, g4]
        + lam[g1, mul[g2, g3], g4]
        - lam[g1, g2, mul[g3, g4]]
        + lam[g1, g2, g3]
    )
    return omega % m


def coboundary_alpha0(G: FiniteGroup, H: FiniteAbelianGroup, beta: np.ndarray) -> np.ndarray:
    """2-上链 β: G² → H 的上边缘，作为 α⁰ 表（H 元素下标）"""
    mul, comps = G.mul, H.components
    g1, g2, g3 = np.indices((G.order,) * 3)
    total = (
        comps[beta[g2, g3]]
        - comps[beta[mul[g1, g2], g3]]
        + comps[beta[g1, mul[g2, g3]]]
        - comps[beta[g1, g2]]
    )
    if H.rank == 0:
        return np.zeros(g1.shape, dtype=np.int64)
    return H.index_array(total)


def pentagonator_structure(
    G: GroupLike, omega: np.ndarray, m: int, name: str = "pentagonator", verify: bool = False
) -> SemiWeakStructure:
    """H 平凡，π = ω；verify=True 时要求 ω 是 4-上闭链"""
    G = _as_group(G)
    S = SemiWeakStructure.neutral(G, _as_abelian(1), m, name=name).with_maps(pi=omega)
    return require_verified(S) if verify else S


def seeded_pentagonator(n: int, m: int = 2, seed: int = 0) -> SemiWeakStructure:
    """G = Z/n 上随机规范 3-上链的上边缘"""
    check_range("n", n, 1, 64)
    G = cyclic_group(n)
    rng = np.random.default_rng(seed)
    lam = random_normalized_cochain((n, n, n), m, rng)
    omega = coboundary_4cocycle(G, lam, m)
    return pentagonator_structure(G, omega, m, name=f"pentagonator:{n},{m},{seed}")


def combine(S1: SemiWeakStructure, S2: SemiWeakStructure, verify: bool = True) -> SemiWeakStructure:
    """逐点相乘两个结构的相位映射

    Args:
        S1, S2: 相同 G、H 且 α⁰ 一致的结构
        verify: 是否对结果运行 verify_all，失败时抛出 StructureError

    Returns:
        根阶为 lcm(m1, m2) 的新结构
    """
    if not S1.same_shape(S2):
        raise StructureError("cannot combine structures over different groups")
    if not np.array_equal(S1.alpha0, S2.alpha0):
        raise StructureError("cannot combine structures whose alpha0 tables differ")
    m = math.lcm(S1.m, S2.m)
    a, b = S1.lifted(m), S2.lifted(m)
    phases = {key: (a.table(key) + b.table(key)) % m for key in PHASE_MAPS}
    S = a.with_maps(name=f"{S1.name}+{S2.name}", **phases)
    return require_verified(S) if verify else S


def structure_from_spec(spec: str, search_dir: Optional[Path] = None) -> SemiWeakStructure:
    """按名称构造内置结构，如 "br-tau:3,1"、"combine:br-tau:3,1+br-tau:3,1"

    file:<path> 的相对路径在当前目录找不到时到 search_dir 下查找。

    Raises:
        StructureError: 未知名称或参数错误
    """
    spec = spec.strip()
    name, _, rest = spec.partition(":")
    if name == "file":
        return load_structure(locate_file(rest, search_dir))
    if name == "combine":
        parts = rest.split("+")
        if len(parts) < 2:
            raise StructureError("combine needs at least two structures: combine:<a>+<b>")
        S = structure_from_spec(parts[0], search_dir)
        for part in parts[1:]:
            S = combine(S, structure_from_spec(part, search_dir))
        return S
    try:
        params = parse_params(rest)
    except ValueError as e:
        raise StructureError(f"malformed parameters in {spec!r}") from e

    def need(low: int, high: int) -> None:
        if not low <= len(params) <= high:
            raise StructureError(f"{spec!r}: expected {BUILTIN_STRUCTURES[name][0]}")

    if name == "trivial":
        need(2, 3)
        return trivial_structure(params[0], params[1], params[2] if len(params) > 2 else 1)
    if name == "br-tau":
        need(2, 2)
        return br_tau(*params)
    if name == "br-iota1":
        need(2, 2)
        return br_iota1(*params)
    if name == "br-iota2":
        need(2, 2)
        return br_iota2(*params)
    if name == "pentagonator":
        need(1, 3)
        return seeded_pentagonator(*params)
    if name == "semion":
        need(0, 0)
        return semion_structure()
    raise StructureError(f"unknown structure '{name}'")


__all__ = [
    "BUILTIN_STRUCTURES",
    "braided_structure",
    "br_iota1",
    "br_iota2",
    "br_tau",
    "coboundary_4cocycle",
    "coboundary_alpha0",
    "combine",
    "pentagonator_structure",
    "random_normalized_cochain",
    "require_verified",
    "seeded_pentagonator",
    "semion_structure",
    "structure_from_spec",
    "trivial_structure",
]
