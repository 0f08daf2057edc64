"""2-等价见证的有界搜索

条件 1–9 对每个未知映射都是线性的，按 μ → Φ → ψ → χ → φ 分阶段求解：
每一阶段把所涉及条件展开为 const + Σ c·x = 0 形式的方程组，
用带强制赋值的回溯枚举其解。Φ、ψ、χ 的解会互相影响后续阶段，需要回溯；
φ 只取第一个解。μ 通过 ι、π 的修正进入条件 4、5、6、9，也要回溯。
"""
import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Iterator, Optional

import numpy as np
from rich.console import Console

from neostate.core.errors import StructureError
from neostate.equivalence.data import EQUIVALENCE_SIGNATURES, EquivalenceData
from neostate.equivalence.verify import (
    CONDITION_TABLE,
    EquivalenceContext,
    EquivalenceReport,
    condition_arguments,
    factor_value,
    verify_equivalence,
)
from neostate.structure.semiweak import (
    SemiWeakStructure,
    non_neutral_argument_mask,
    table_shape,
)

console = Console()

# 阶段：(未知映射, 约束它的条件)
STAGES: tuple[tuple[str, tuple[int, ...]], ...] = (
    ("mu", (2, 3, 5)),
    ("Phi", (1,)),
    ("psi", (4, 7)),
    ("chi", (6, 8)),
    ("phi", (9,)),
)

Var = tuple[str, tuple[int, ...]]


class _BudgetHit(Exception):
    pass


class _Counter:
    def __init__(self, budget: int):
        self.budget = budget
        self.explored = 0

    def tick(self) -> None:
        self.explored += 1
        if self.explored > self.budget:
            raise _BudgetHit()


class _Ring:
    """Z/m"""

    def __init__(self, m: int):
        self.m = m
        self.size = m

    def scale(self, a: int, k: int) -> int:
        return (a * k) % self.m

    def nonzero(self, k: int) -> bool:
        return k % self.m != 0

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.m

    def solve_unit(self, rest: int, coef: int) -> int:
        # coef·x + rest = 0，coef = ±1
        return (-coef * rest) % self.m


class _HGroup:
    def __init__(self, H):
        self.H = H
        self.size = H.order

    def scale(self, a: int, k: int) -> int:
        return self.H.scale(a, k)

    def nonzero(self, k: int) -> bool:
        return k % self.H.exponent != 0

    def add(self, a: int, b: int) -> int:
        return self.H.add(a, b)

    def solve_unit(self, rest: int, coef: int) -> int:
        return self.H.neg(rest) if coef == 1 else rest


@dataclass
class LinearEquation:
    condition: int
    args: tuple[int, ...]
    const: int
    coeffs: dict[Var, int] = field(default_factory=dict)


class LinearSystem:
    """一组阶段方程及其回溯求解"""

    def __init__(self, variables: list[Var], equations: list[LinearEquation], ring):
        self.variables = variables
        self.ring = ring
        self.position = {v: n for n, v in enumerate(variables)}
        self.constant_failure: Optional[LinearEquation] = None
        self.closing: list[list[LinearEquation]] = [[] for _ in variables]
        for eq in equations:
            eq.coeffs = {v: c for v, c in eq.coeffs.items() if ring.nonzero(c)}
            if not eq.coeffs:
                if eq.const != 0 and self.constant_failure is None:
                    self.constant_failure = eq
                continue
            last = max(self.position[v] for v in eq.coeffs)
            self.closing[last].append(eq)

    def _residual(self, eq: LinearEquation, values: list[int]) -> int:
        total = eq.const
        for v, c in eq.coeffs.items():
            total = self.ring.add(total, self.ring.scale(values[self.position[v]], c))
        return total

    def _candidates(self, index: int, values: list[int]) -> Iterator[int]:
        var = self.variables[index]
        for eq in self.closing[index]:
            c = eq.coeffs[var]
            if c in (1, -1):
                values[index] = 0
                yield self.ring.solve_unit(self._residual(eq, values), c)
                return
        yield from range(self.ring.size)

    def solutions(self, counter: _Counter) -> Iterator[dict[Var, int]]:
        """按变量顺序深度优先枚举全部解"""
        if self.constant_failure is not None:
            return
        n = len(self.variables)
        if n == 0:
            yield {}
            return
        values = [0] * n
        stack = [self._candidates(0, values)]
        while stack:
            index = len(stack) - 1
            advanced = False
            for value in stack[-1]:
                counter.tick()
                values[index] = value
                if all(self._residual(eq, values) == 0 for eq in self.closing[index]):
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                continue
            if index + 1 == n:
                yield dict(zip(self.variables, values))
                continue
            stack.append(self._candidates(index + 1, values))


@dataclass
class SearchResult:
    """status 为 found、exhausted 或 budget"""

    status: str
    witness: Optional[EquivalenceData] = None
    explored: int = 0
    report: Optional[EquivalenceReport] = None
    detail: str = ""

    @property
    def found(self) -> bool:
        return self.status == "found"

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "explored": self.explored,
            "detail": self.detail,
            "witness": self.witness.name if self.witness is not None else None,
            "report": self.report.to_dict() if self.report is not None else None,
        }


def stage_variables(S: SemiWeakStructure, key: str) -> list[Var]:
    shape = table_shape(EQUIVALENCE_SIGNATURES[key], S.G, S.H)
    if not shape or 0 in shape:
        return []
    free = ~non_neutral_argument_mask(shape)
    return [(key, tuple(int(a) for a in idx)) for idx in np.argwhere(free)]


def stage_system(
    S: SemiWeakStructure, S2: SemiWeakStructure, E: EquivalenceData, key: str,
    conditions: tuple[int, ...],
) -> LinearSystem:
    """在 E 已知部分的基础上，把 conditions 展开为 key 的线性方程组"""
    ring = _HGroup(S.H) if key == "Phi" else _Ring(S.m)
    variables = stage_variables(S, key)
    known = set(variables)
    ctx = EquivalenceContext(S, E, S2)
    equations = []
    for number in conditions:
        build = CONDITION_TABLE[number][2]
        for args in condition_arguments(S, number):
            eq = LinearEquation(number, tuple(int(a) for a in args), 0)
            for f in build(ctx, *args):
                if f.side == "E" and f.key == key:
                    var = (key, f.args)
                    if var in known:
                        eq.coeffs[var] = eq.coeffs.get(var, 0) + f.sign
                    continue
                value = factor_value(S, S2, E, f)
                eq.const = ring.add(eq.const, ring.scale(value, f.sign))
            equations.append(eq)
    return LinearSystem(variables, equations, ring)


def _with_solution(E: EquivalenceData, S: SemiWeakStructure, key: str,
                   solution: dict[Var, int]) -> EquivalenceData:
    table = np.zeros(table_shape(EQUIVALENCE_SIGNATURES[key], S.G, S.H), dtype=np.int64)
    for (_, args), value in solution.items():
        table[args] = value
    return E.with_maps(**{key: table})


def _stage_solutions(
    S: SemiWeakStructure, S2: SemiWeakStructure, E: EquivalenceData, stage: int,
    counter: _Counter,
) -> Iterator[EquivalenceData]:
    if stage == len(STAGES):
        yield E
        return
    key, conditions = STAGES[stage]
    system = stage_system(S, S2, E, key, conditions)
    for solution in system.solutions(counter):
        yield from _stage_solutions(S, S2, _with_solution(E, S, key, solution), stage + 1, counter)
        # φ 不出现在其它阶段的方程里
        if key == "phi":
            return


def _automorphism_choices(S: SemiWeakStructure, widen: bool) -> Iterator[tuple]:
    identity = (tuple(range(S.G.order)), tuple(range(S.H.order)), 1)
    yield identity
    if not widen:
        return
    units = [t for t in range(1, max(S.m, 2)) if math.gcd(t, S.m) == 1] or [1]
    for autG, autH, t in itertools.product(
        list(S.G.automorphisms()), list(S.H.automorphisms()), units
    ):
        if (autG, autH, t) != identity:
            yield autG, autH, t


def search_equivalence(
    S: SemiWeakStructure,
    S2: SemiWeakStructure,
    budget: int = 1_000_000,
    widen_automorphisms: bool = False,
    verbose: bool = False,
) -> SearchResult:
    """搜索 S 与 S2 之间的 2-等价见证

    Args:
        S: 源结构
        S2: 靶结构
        budget: 回溯过程中允许尝试的赋值总数
        widen_automorphisms: 为 True 时遍历 G、H 的全部自同构与 m 的单位
        verbose: 打印每组自同构的搜索进度

    Returns:
        SearchResult；exhausted 只表示在所枚举的自同构范围内不存在见证

    Raises:
        StructureError: 两个结构的群或 m 不同
        ValueError: widen_automorphisms 时 G 的阶过大
    """
    if not S.same_shape(S2) or S.m != S2.m:
        raise StructureError("search needs structures over the same G, H and m")
    counter = _Counter(budget)
    try:
        for autG, autH, t in _automorphism_choices(S, widen_automorphisms):
            E0 = EquivalenceData.zeros(S, autG=autG, autH=autH, t=t, name="search")
            for witness in _stage_solutions(S, S2, E0, 0, counter):
                report = verify_equivalence(S, S2, witness, structures=False)
                if report.passed:
                    if verbose:
                        console.print(f"[green]✓[/green] 见证已找到，共尝试 {counter.explored} 次赋值")
                    return SearchResult("found", witness, counter.explored, report)
                if verbose:
                    console.print("[yellow]警告:[/yellow] 阶段解未通过完整验证，继续搜索")
    except _BudgetHit:
        return SearchResult(
            "budget", explored=counter.explored,
            detail=f"more than {budget} assignments tried",
        )
    scope = "all automorphisms" if widen_automorphisms else "identity automorphisms"
    return SearchResult("exhausted", explored=counter.explored, detail=f"no witness with {scope}")
