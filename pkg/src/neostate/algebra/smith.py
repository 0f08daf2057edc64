"""Smith 标准形与模 n 线性方程组求解

所有矩阵运算使用 dtype=object（Python 整数），保证精确。
"""
import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np


@dataclass(frozen=True, eq=False)
class SmithDecomposition:
    """U·A·V = D，U 与 V 为幺模矩阵"""

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray

    @property
    def invariants(self) -> list[int]:
        """非零不变因子 d_1 | d_2 | …"""
        k = min(self.D.shape)
        return [int(self.D[i, i]) for i in range(k) if self.D[i, i] != 0]

    @property
    def rank(self) -> int:
        return len(self.invariants)


def _identity(n: int) -> np.ndarray:
    eye = np.zeros((n, n), dtype=object)
    for i in range(n):
        eye[i, i] = 1
    return eye


def _as_object_matrix(A) -> np.ndarray:
    arr = np.array(A, dtype=object)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-dimensional matrix, got shape {arr.shape}")
    return np.vectorize(int, otypes=[object])(arr) if arr.size else arr


def smith_normal_form(A) -> SmithDecomposition:
    """计算整数矩阵的 Smith 标准形

    逐个对角位置选取绝对值最小的非零元作主元，行列消元直到该行该列清零，
    若主元不整除剩余子矩阵则把违规行加到主元行继续。

    Args:
        A: 整数矩阵（任意形状，可为空）

    Returns:
        SmithDecomposition
    """
    D = _as_object_matrix(A).copy()
    rows, cols = D.shape
    U = _identity(rows)
    V = _identity(cols)

    for t in range(min(rows, cols)):
        while True:
            sub = D[t:, t:]
            nz = np.argwhere(sub != 0)
            if len(nz) == 0:
                break
            magnitudes = [abs(sub[i, j]) for i, j in nz]
            i, j = nz[int(np.argmin(magnitudes))]
            i, j = int(i) + t, int(j) + t
            if i != t:
                D[[t, i], :] = D[[i, t], :]
                U[[t, i], :] = U[[i, t], :]
            if j != t:
                D[:, [t, j]] = D[:, [j, t]]
                V[:, [t, j]] = V[:, [j, t]]

            p = D[t, t]
            if t + 1 < rows:
                q = D[t + 1 :, t] // p
                if any(q):
                    D[t + 1 :, :] -= np.outer(q, D[t, :])
                    U[t + 1 :, :] -= np.outer(q, U[t, :])
            if t + 1 < cols:
                q = D[t, t + 1 :] // p
                if any(q):
                    D[:, t + 1 :] -= np.outer(D[:, t], q)
                    V[:, t + 1 :] -= np.outer(V[:, t], q)

            if any(D[t + 1 :, t]) or any(D[t, t + 1 :]):
                continue

            rest = D[t + 1 :, t + 1 :]
            bad = np.argwhere(rest % p != 0) if rest.size else []
            if len(bad):
                r = int(bad[0][0]) + t + 1
                D[t, :] += D[r, :]
                U[t, :] += U[r, :]
                continue
            break

        if D[t, t] < 0:
            D[t, :] = -D[t, :]
            U[t, :] = -U[t, :]

    return SmithDecomposition(U=U, D=D, V=V)


@dataclass(frozen=True, eq=False)
class KernelGroup:
    """模 n 解空间中的有限阿贝尔子群，直和分解为循环因子

    Args:
        generators: (k, c) 生成元矩阵
        orders: 每个生成元的阶
        modulus: 模数 n
    """

    generators: np.ndarray
    orders: tuple[int, ...]
    modulus: int

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def length(self) -> int:
        return int(self.generators.shape[1])

    def coefficient_grid(self, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
        """按混合进制返回第 start..stop 个元素的系数向量"""
        stop = self.order if stop is None else min(stop, self.order)
        idx = np.arange(start, stop, dtype=np.int64)
        coeffs = np.zeros((len(idx), len(self.orders)), dtype=np.int64)
        for a in range(len(self.orders) - 1, -1, -1):
            coeffs[:, a] = idx % self.orders[a]
            idx = idx // self.orders[a]
        return coeffs

    def elements_chunk(self, start: int, stop: int) -> np.ndarray:
        coeffs = self.coefficient_grid(start, stop)
        return (coeffs @ self.generators) % self.modulus

    def elements(self) -> Iterator[np.ndarray]:
        for coeffs in itertools.product(*(range(o) for o in self.orders)):
            vec = np.zeros(self.length, dtype=np.int64)
            for c, g in zip(coeffs, self.generators):
                vec = vec + c * g
            yield vec % self.modulus


@dataclass(frozen=True, eq=False)
class ModSolution:
    particular: np.ndarray
    kernel: KernelGroup


class ModularSolver:
    """对固定系数矩阵 A 与模数 n，预先计算 Smith 分解，之后对多个右端反复求解"""

    def __init__(self, A, n: int):
        if n < 1:
            raise ValueError(f"modulus must be positive, got {n}")
        A = _as_object_matrix(A)
        self.rows, self.cols = A.shape
        self.n = n
        snf = smith_normal_form(A)
        self.rank = snf.rank
        self.U = np.array(snf.U % n, dtype=np.int64)
        self.V = np.array(snf.V % n, dtype=np.int64)
        diag = [int(snf.D[i, i]) for i in range(self.rank)]
        self._gcds = [math.gcd(d, n) for d in diag]
        self._inverses = []
        for d, g in zip(diag, self._gcds):
            modulus = n // g
            self._inverses.append(pow(d // g, -1, modulus) if modulus > 1 else 0)

        gens, orders = [], []
        for i in range(self.cols):
            order = self._gcds[i] if i < self.rank else n
            if order > 1:
                gens.append((self.V[:, i] * (n // order)) % n)
                orders.append(order)
        generators = np.array(gens, dtype=np.int64).reshape(len(gens), self.cols)
        self.kernel = KernelGroup(generators=generators, orders=tuple(orders), modulus=n)

    def solve_many(self, B: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """批量求解 A·x ≡ b (mod n)

        Args:
            B: (N, rows) 右端

        Returns:
            (particulars (N, cols), solvable 掩码 (N,))
        """
        B = np.asarray(B, dtype=np.int64).reshape(-1, self.rows) % self.n
        N = B.shape[0]
        C = (B @ self.U.T) % self.n
        ok = np.ones(N, dtype=bool)
        Y = np.zeros((N, self.cols), dtype=np.int64)
        for i, (g, inv) in enumerate(zip(self._gcds, self._inverses)):
            ok &= C[:, i] % g == 0
            modulus = self.n // g
            Y[:, i] = ((C[:, i] // g) * inv) % modulus if modulus > 1 else 0
        if self.rows > self.rank:
            ok &= ~np.any(C[:, self.rank :], axis=1)
        X = (Y @ self.V.T) % self.n
        return X, ok

    def solve(self, b: Sequence[int]) -> Optional[ModSolution]:
        if len(b) != self.rows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {self.rows}")
        X, ok = self.solve_many(np.asarray(b, dtype=np.int64).reshape(1, -1))
        if not ok[0]:
            return None
        return ModSolution(particular=X[0], kernel=self.kernel)


def solve_mod(A, b: Sequence[int], n: int) -> Optional[ModSolution]:
    """求解 A·x ≡ b (mod n)

    Args:
        A: 整数矩阵 (rows, cols)
        b: 长度为 rows 的整数向量
        n: 模数

    Returns:
        特解与核群；无解时返回 None
    """
    A = np.array(A, dtype=object)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-dimensional matrix, got shape {A.shape}")
    return ModularSolver(A, n).solve(b)
