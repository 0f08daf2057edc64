"""单纯同调（Smith 标准形）"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from neostate.algebra import smith_normal_form
from neostate.complex.triangulation import OrderedTriangulation


@dataclass(frozen=True)
class GroupDescription:
    """有限生成阿贝尔群 Z^rank ⊕ ⊕ Z/t"""

    rank: int
    torsion: tuple[int, ...] = ()

    @property
    def order(self) -> Optional[int]:
        """有限群的阶，无限群返回 None"""
        return None if self.rank else math.prod(self.torsion)

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)

    def __str__(self) -> str:
        parts = ["Z" if self.rank == 1 else f"Z^{self.rank}"] if self.rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def boundary_matrix(T: OrderedTriangulation, k: int) -> np.ndarray:
    """∂_k: C_k → C_{k-1}，行对应 (k-1) 维面"""
    rows = {f: i for i, f in enumerate(T.faces(k - 1))}
    cols = T.faces(k)
    D = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, face in enumerate(cols):
        for p in range(len(face)):
            D[rows[face[:p] + face[p + 1 :]], j] = (-1) ** p
    return D


def _invariants(D: np.ndarray) -> list[int]:
    if D.size == 0:
        return []
    return smith_normal_form(D).invariants


def integral_homology(T: OrderedTriangulation) -> list[GroupDescription]:
    sizes = [len(T.faces(k)) for k in range(T.dim + 1)]
    invariants = [[]] + [_invariants(boundary_matrix(T, k)) for k in range(1, T.dim + 1)] + [[]]
    out = []
    for k in range(T.dim + 1):
        rank = sizes[k] - len(invariants[k]) - len(invariants[k + 1])
        torsion = tuple(d for d in invariants[k + 1] if d > 1)
        out.append(GroupDescription(rank, torsion))
    return out


def homology(T: OrderedTriangulation, n: int = 0) -> list[GroupDescription]:
    """H_0..H_dim，系数为 Z（n=0）或 Z/n

    Z/n 系数由万有系数定理 H_k ⊗ Z/n ⊕ Tor(H_{k-1}, Z/n) 得到。
    """
    integral = integral_homology(T)
    if n == 0:
        return integral
    out = []
    for k, H in enumerate(integral):
        factors = [n] * H.rank + [math.gcd(t, n) for t in H.torsion]
        if k > 0:
            factors += [math.gcd(t, n) for t in integral[k - 1].torsion]
        out.append(GroupDescription(0, tuple(sorted(f for f in factors if f > 1))))
    return out


def euler_characteristic(T: OrderedTriangulation) -> int:
    return sum((-1) ** k * f for k, f in enumerate(T.f_vector))
