"""精确快速路径

linear：α¹、τ 平凡且 ι 对 h 可加时，固定 g 后指数是 h 的仿射函数，
        对核的求和要么为 0，要么为 |K|·ζ^{E(p)}。
quadratic：G 平凡、α¹ 平凡、τ 为双特征时，指数是核上的二次函数；
        核为 (Z/p)^r（p 为奇素数）时对角化后逐维求 Gauss 和。
gray：同上但 p = 2，按 Gray 码顺序逐位翻转，低位块整体向量化。
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from sympy import isprime

from neostate.algebra import Cyclotomic, from_exponent_counts, root_of_unity
from neostate.core.errors import MethodNotApplicableError
from neostate.labelling import coboundary_system
from neostate.statesum.program import ExponentProgram, Term, evaluate_g
from neostate.statesum.simplex import complex_bindings, complex_program
from neostate.structure import IdentityName, MAP_SIGNATURES, verify_identity


def linear_reasons(S) -> list[str]:
    """线性路径不适用的原因，空表示适用"""
    reasons = []
    if not S.is_trivial_map("alpha1"):
        reasons.append("alpha1 is not trivial")
    if not S.is_trivial_map("tau"):
        reasons.append("tau is not trivial")
    for name in (IdentityName.I1_MULT, IdentityName.I2_MULT, IdentityName.I3_MULT):
        if not verify_identity(S, name).passed:
            reasons.append(f"{name.value} fails, iota is not additive in h")
    return reasons


def quadratic_reasons(S) -> list[str]:
    reasons = []
    if not S.is_g_trivial:
        reasons.append("G is not trivial")
    if not S.is_trivial_map("alpha1"):
        reasons.append("alpha1 is not trivial")
    if not verify_identity(S, IdentityName.HEX).passed:
        reasons.append("tau is not a bicharacter")
    return reasons


def kernel_prime(S, T) -> tuple[Optional[int], list[str]]:
    """核为 (Z/p)^r 时返回 p"""
    kernel = coboundary_system(T, S.H).kernel
    orders = set(kernel.orders)
    if not orders:
        return None, ["the cocycle kernel is trivial"]
    if len(orders) > 1 or not isprime(next(iter(orders))):
        return None, [f"kernel orders {sorted(orders)} are not a single prime"]
    p = next(iter(orders))
    if S.m % p:
        return None, [f"root order {S.m} is not divisible by the kernel prime {p}"]
    return p, []


# ---------------------------------------------------------------------------
# linear
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _LinearTerm:
    table: str
    factor: int
    args: tuple
    position: int
    face: int


@dataclass(frozen=True)
class LinearDecomposition:
    """E(g, h) = constant(g) + Σ_t ⟨χ_t(g), h_t⟩"""

    constant: ExponentProgram
    terms: tuple[_LinearTerm, ...]


def split_linear(program: ExponentProgram, S) -> LinearDecomposition:
    """把程序拆成不含 h 的部分与单个面变量的线性项

    Raises:
        MethodNotApplicableError: 某项含多个 H 参数或 H 参数不是单个面变量
    """
    constant: list[Term] = []
    linear: list[_LinearTerm] = []
    for term in program.terms:
        if S.is_trivial_map(term.table):
            continue
        positions = [i for i, c in enumerate(MAP_SIGNATURES[term.table]) if c == "H"]
        if not positions:
            constant.append(term)
            continue
        if len(positions) > 1:
            raise MethodNotApplicableError("linear", [f"{term.table} has several H arguments"])
        pos = positions[0]
        arg = term.args[pos]
        if len(arg.terms) != 1 or arg.terms[0][1][0] != "var":
            raise MethodNotApplicableError("linear", [f"{term.table} argument {arg} is not a face"])
        coef, (_, name) = arg.terms[0]
        linear.append(_LinearTerm(term.table, term.sign * coef, term.args, pos, int(name[1:])))
    return LinearDecomposition(ExponentProgram(tuple(constant)), tuple(linear))


def linear_chunk(S, T, decomposition: LinearDecomposition, g_rows, particulars) -> np.ndarray:
    """一块可解 g 的指数直方图（计数未乘 |K|）

    Args:
        g_rows: (N, v1) 平坦标号
        particulars: (N, 三角形数, rank) 特解分量

    Returns:
        长度 m 的 int64 直方图，只统计核上特征平凡的 g
    """
    m, H = S.m, S.H
    N = len(g_rows)
    F = len(T.triangles)
    bindings = {f"e{n}": g_rows[:, n] for n in range(g_rows.shape[1])}
    base = np.broadcast_to(decomposition.constant.evaluate(S, bindings), (N,))

    units = [H.index([1 if c == r else 0 for c in range(H.rank)]) for r in range(H.rank)]
    chi = np.zeros((N, F, H.rank), dtype=np.int64)
    g_cache: dict[tuple, np.ndarray] = {}
    for lt in decomposition.terms:
        table = S.table(lt.table)
        gvals = []
        for i, arg in enumerate(lt.args):
            if i == lt.position:
                gvals.append(None)
                continue
            if arg not in g_cache:
                g_cache[arg] = np.broadcast_to(evaluate_g(S, arg, bindings), (N,))
            gvals.append(g_cache[arg])
        for r, unit in enumerate(units):
            index = tuple(unit if v is None else v for v in gvals)
            chi[:, lt.face, r] += lt.factor * table[index]
    chi %= m

    system = coboundary_system(T, H)
    gens = system.kernel.generators.reshape(len(system.kernel.orders), F, H.rank)
    at_p = (base + np.einsum("nfr,nfr->n", particulars, chi)) % m
    characters = np.einsum("kfr,nfr->nk", gens, chi) % m
    trivial = ~np.any(characters, axis=1)
    return np.bincount(at_p[trivial], minlength=m)


# ---------------------------------------------------------------------------
# quadratic / gray
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadraticData:
    """核坐标 x 上的 Q(x) = c + Σ l_a x_a + Σ_{a≤b} q_ab x_a x_b（模 m）

    l 含对角项：l_a = Q(e_a) − c；beta_a = Q(2e_a) − 2Q(e_a) + c；
    s 为交叉项 Q(e_a+e_b) − Q(e_a) − Q(e_b) + c。
    """

    m: int
    constant: int
    linear: np.ndarray
    beta: np.ndarray
    cross: np.ndarray


def _coset_exponents(S, T, particular: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """E(p + Σ coeffs·k)，coeffs 为 (N, r)"""
    system = coboundary_system(T, S.H)
    F, rank = particular.shape
    gens = system.kernel.generators.reshape(len(system.kernel.orders), F, rank)
    comps = particular[None] + np.einsum("na,afr->nfr", coeffs, gens)
    labels = S.H.index_array(comps)
    g_rows = np.zeros((len(coeffs), len(T.edges)), dtype=np.int64)
    program = complex_program(T)
    return np.broadcast_to(
        program.evaluate(S, complex_bindings(g_rows, labels)), (len(coeffs),)
    )


def quadratic_data(S, T, particular: np.ndarray) -> QuadraticData:
    """极化求值，得到核上二次函数的系数"""
    r = len(coboundary_system(T, S.H).kernel.orders)
    eye = np.eye(r, dtype=np.int64)
    pairs = [(a, b) for a in range(r) for b in range(a + 1, r)]
    points = [np.zeros((1, r), dtype=np.int64), eye, 2 * eye]
    if pairs:
        points.append(np.array([eye[a] + eye[b] for a, b in pairs], dtype=np.int64))
    values = _coset_exponents(S, T, particular, np.concatenate(points))
    m = S.m
    c = int(values[0])
    single = values[1 : 1 + r]
    double = values[1 + r : 1 + 2 * r]
    cross = np.zeros((r, r), dtype=np.int64)
    for n, (a, b) in enumerate(pairs):
        v = (values[1 + 2 * r + n] - single[a] - single[b] + c) % m
        cross[a, b] = cross[b, a] = v
    return QuadraticData(
        m=m,
        constant=c,
        linear=(single - c) % m,
        beta=(double - 2 * single + c) % m,
        cross=cross,
    )


def _predict(data: QuadraticData, x: np.ndarray) -> np.ndarray:
    """按系数计算 Q(x)，对角项用 beta 与 l 还原"""
    m = data.m
    # Q(x) = c + Σ l_a x_a + Σ β_a x_a(x_a−1)/2 + Σ_{a<b} s_ab x_a x_b
    diag = (data.beta[None, :] * (x * (x - 1) // 2)).sum(axis=1)
    cross = np.einsum("na,ab,nb->n", x, np.triu(data.cross, 1), x)
    return (data.constant + x @ data.linear + diag + cross) % m


def check_quadratic(S, T, particular: np.ndarray, data: QuadraticData, p: int, samples: int = 16):
    """在若干随机核点上比较预测值与实际指数"""
    r = len(data.linear)
    if r == 0:
        return
    rng = np.random.default_rng(0)
    x = rng.integers(0, p, size=(samples, r), dtype=np.int64)
    actual = _coset_exponents(S, T, particular, x)
    if np.any(_predict(data, x) != actual):
        raise MethodNotApplicableError("quadratic", ["exponent is not quadratic on the kernel"])


def _diagonalize(A: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """对称矩阵在 F_p 上的合同对角化，返回 (对角元, P) 使 PᵀAP 为对角阵"""
    A = A.copy() % p
    n = len(A)
    P = np.eye(n, dtype=np.int64)
    for i in range(n):
        if A[i, i] == 0:
            j = next((j for j in range(i + 1, n) if A[j, j]), None)
            if j is not None:
                A[[i, j]] = A[[j, i]]
                A[:, [i, j]] = A[:, [j, i]]
                P[:, [i, j]] = P[:, [j, i]]
            else:
                j = next((j for j in range(i + 1, n) if A[i, j]), None)
                if j is None:
                    continue
                A[i, :] = (A[i, :] + A[j, :]) % p
                A[:, i] = (A[:, i] + A[:, j]) % p
                P[:, i] = (P[:, i] + P[:, j]) % p
        inv = pow(int(A[i, i]), -1, p)
        for j in range(i + 1, n):
            if A[j, i]:
                f = (int(A[j, i]) * inv) % p
                A[j, :] = (A[j, :] - f * A[i, :]) % p
                A[:, j] = (A[:, j] - f * A[:, i]) % p
                P[:, j] = (P[:, j] - f * P[:, i]) % p
    return np.diag(A).copy(), P


def gauss_sum(data: QuadraticData, p: int) -> Cyclotomic:
    """Σ_{x ∈ (Z/p)^r} ζ_m^{Q(x)}，p 为奇素数"""
    m, r = data.m, len(data.linear)
    step = m // p
    inv2 = pow(2, -1, p)
    if np.any(data.beta % step) or np.any(data.linear % step) or np.any(data.cross % step):
        raise MethodNotApplicableError("quadratic", [f"coefficients are not multiples of {step}"])
    q = (data.beta // step * inv2) % p
    lin = (data.linear // step - q) % p
    A = (data.cross // step * inv2) % p
    A[np.arange(r), np.arange(r)] = q
    diag, P = _diagonalize(A, p)
    lin = (P.T @ lin) % p

    value = root_of_unity(m, data.constant)
    y = np.arange(p)
    for d, b in zip(diag, lin):
        counts = np.bincount((int(d) * y * y + int(b) * y) % p, minlength=p)
        value = value * from_exponent_counts(p, counts).lift(m)
    return value


def gray_histogram(
    data: QuadraticData, start: int, stop: int, low_bits: int
) -> np.ndarray:
    """高位 Gray 码第 start..stop 个状态上的指数直方图

    低 low_bits 位整体向量化；每翻转一个高位，低位数组加上一列交叉项。
    """
    m, r = data.m, len(data.linear)
    low = min(low_bits, r)
    high = r - low
    lin, cross = data.linear, data.cross
    X = ((np.arange(1 << low)[:, None] >> np.arange(low)[None, :]) & 1).astype(np.int64)
    hi_idx = np.arange(low, r)
    q_low = (X @ lin[:low] + np.einsum("na,ab,nb->n", X, np.triu(cross[:low, :low], 1), X)) % m
    columns = (X @ cross[:low, low:]) % m if high else np.zeros((1 << low, 0), dtype=np.int64)

    def state(n: int) -> np.ndarray:
        code = n ^ (n >> 1)
        return np.array([(code >> b) & 1 for b in range(high)], dtype=np.int64)

    y = state(start)
    current = (q_low + columns @ y) % m
    scalar = int(data.constant + y @ lin[hi_idx] + y @ np.triu(cross[low:, low:], 1) @ y) % m
    hist = np.zeros(m, dtype=np.int64)
    for n in range(start, stop):
        if n > start:
            # 第 n 个 Gray 码与前一个相差最低置位所在的那一位
            bit = (n & -n).bit_length() - 1
            sign = 1 if y[bit] == 0 else -1
            others = y.copy()
            others[bit] = 0
            delta = lin[low + bit] + others @ cross[low:, low + bit]
            scalar = (scalar + sign * int(delta)) % m
            current = (current + sign * columns[:, bit]) % m
            y[bit] ^= 1
        hist += np.bincount((current + scalar) % m, minlength=m)
    return hist


def gray_ranges(r: int, low_bits: int, parts: int) -> list[tuple[int, int]]:
    states = 1 << max(0, r - min(low_bits, r))
    parts = max(1, min(parts, states))
    size = math.ceil(states / parts)
    return [(s, min(s + size, states)) for s in range(0, states, size)]
