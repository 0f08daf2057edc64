"""由见证解出扭转后的结构，以及几种常用扭转

α⁰'、α¹'、τ' 由条件 1–3 直接给出；ι²'、ι¹'、ι³'、π' 依次由条件 5、4、6、9 解出，
后者可能因 h 所在对象不同而矛盾，此时扭转不存在。
"""
from typing import Any, Optional, Sequence

import numpy as np

from neostate.core.errors import StructureError
from neostate.equivalence.data import EquivalenceData
from neostate.equivalence.verify import solve_condition
from neostate.structure.semiweak import (
    SemiWeakStructure,
    non_neutral_argument_mask,
    table_shape,
)


def _inverse(perm: Sequence[int]) -> np.ndarray:
    inv = np.zeros(len(perm), dtype=np.int64)
    inv[np.asarray(perm, dtype=np.int64)] = np.arange(len(perm))
    return inv


def twisted_structure(S: SemiWeakStructure, E: EquivalenceData, name: str = "") -> SemiWeakStructure:
    """由 S 和见证 E 解出使条件 1–6 与 9 成立的结构 S'

    条件 7、8 只约束 ψ、χ 本身，由调用方保证。

    Raises:
        StructureError: 某个 ι' 或 π' 依赖 h 所在的对象，不存在这样的 S'
    """
    G, H, m, t = S.G, S.H, S.m, E.t
    hinv, ginv = _inverse(E.autH), _inverse(E.autG)
    hbar = np.asarray(E.autH, dtype=np.int64)
    mul, add, neg = G.mul, H.add_table, H.neg_table
    Phi, mu = E.Phi, E.mu

    # 在 S' 的参数网格上回拉到 S 的参数
    def grid(signature: str) -> list[np.ndarray]:
        axes = np.indices(table_shape(signature, G, H))
        return [ginv[a] if c == "G" else hinv[a] for c, a in zip(signature, axes)]

    g1, g2, g3 = grid("GGG")
    alpha0 = add[add[hbar[S.alpha0[g1, g2, g3]], Phi[mul[g1, g2], g3]], Phi[g1, g2]]
    alpha0 = add[add[alpha0, neg[Phi[g1, mul[g2, g3]]]], neg[Phi[g2, g3]]]

    h1, h2, h3 = grid("HHH")
    alpha1 = (
        t * S.alpha1[h1, h2, h3]
        + mu[add[h1, h2], h3] + mu[h1, h2] - mu[h1, add[h2, h3]] - mu[h2, h3]
    )

    a, b = grid("HH")
    tau = t * S.tau[a, b] + mu[b, a] - mu[a, b]

    S2 = SemiWeakStructure.neutral(G, H, m, name=name or f"{S.name or 'structure'}'")
    S2 = S2.with_maps(alpha0=alpha0, alpha1=alpha1 % m, tau=tau % m)
    for number, key in ((5, "iota2"), (4, "iota1"), (6, "iota3"), (9, "pi")):
        S2 = S2.with_maps(**{key: solve_condition(S, S2, E, number, key)})
    return S2


def _normalized(table: np.ndarray, modulus: Optional[int] = None) -> np.ndarray:
    arr = np.array(table, dtype=np.int64)
    if modulus is not None:
        arr %= modulus
    if arr.size:
        arr[non_neutral_argument_mask(arr.shape)] = 0
    return arr


def mu_twist(S: SemiWeakStructure, mu) -> tuple[SemiWeakStructure, EquivalenceData]:
    """用 μ 扭转 α¹ 与 τ，ι 与 π 带上越过 α⁰ 字母时的 μ 修正

    Raises:
        StructureError: μ(h,α) − μ(α,h) 随 h 所在对象的 α⁰ 字母而变，扭转不存在
    """
    E = EquivalenceData.zeros(S, mu=_normalized(mu, S.m), name="mu-twist")
    return twisted_structure(S, E, name=f"{S.name or 'structure'}^mu"), E


def phi_twist(S: SemiWeakStructure, phi) -> tuple[SemiWeakStructure, EquivalenceData]:
    """按条件 9 用 φ 修改五边形子"""
    E = EquivalenceData.zeros(S, phi=_normalized(phi, S.m), name="phi-twist")
    return twisted_structure(S, E, name=f"{S.name or 'structure'}^phi"), E


def Phi_twist(S: SemiWeakStructure, Phi) -> tuple[SemiWeakStructure, EquivalenceData]:
    """按条件 1 用 Φ 修改 α⁰

    Raises:
        StructureError: τ 或任一 ι 非平凡（此时 Φ 的修正不会全部消失）
    """
    busy = [key for key in ("tau", "iota1", "iota2", "iota3") if not S.is_trivial_map(key)]
    if busy:
        raise StructureError(f"Phi twist needs trivial {', '.join(busy)}")
    Phi = _normalized(Phi)
    if Phi.size and (Phi.min() < 0 or Phi.max() >= S.H.order):
        raise StructureError("Phi values must be element indices of H")
    E = EquivalenceData.zeros(S, Phi=Phi, name="Phi-twist")
    return twisted_structure(S, E, name=f"{S.name or 'structure'}^Phi"), E


def automorphism_twist(
    S: SemiWeakStructure,
    autH: Optional[Sequence[int]] = None,
    autG: Optional[Sequence[int]] = None,
    t: int = 1,
) -> tuple[SemiWeakStructure, EquivalenceData]:
    """沿自同构搬运全部结构映射"""
    overrides: dict[str, Any] = {"t": t, "name": "automorphism"}
    if autH is not None:
        overrides["autH"] = tuple(autH)
    if autG is not None:
        overrides["autG"] = tuple(autG)
    E = EquivalenceData.zeros(S, **overrides)
    failures = E.failures(S)
    if failures:
        raise StructureError("; ".join(failures))
    return twisted_structure(S, E, name=f"{S.name or 'structure'}^aut"), E

