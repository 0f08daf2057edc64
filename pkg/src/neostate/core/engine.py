"""态和计算引擎

外层按块枚举平坦 g 标号并批量求解半平坦方程组，每块交给线程池
（asyncio.to_thread + Semaphore）计算指数直方图，最后汇总成分圆数。
"""
import asyncio
import os
import time
from fractions import Fraction
from typing import Any, Callable, Iterable, Optional

import numpy as np
from neostate.algebra import Cyclotomic, from_exponent_counts
from neostate.core.errors import BudgetExceededError, MethodNotApplicableError
from neostate.labelling import coboundary_system, component_count, flat_g_chunks
from neostate.statesum.fastpaths import (
    check_quadratic,
    gauss_sum,
    gray_histogram,
    gray_ranges,
    kernel_prime,
    linear_chunk,
    linear_reasons,
    quadratic_data,
    quadratic_reasons,
    split_linear,
)
from neostate.statesum.result import METHODS, StateSumResult
from neostate.statesum.simplex import complex_bindings, complex_program
from neostate.utils.ui import MethodUI

GRAY_LOW_BITS = 20


class StateSumEngine:
    """Z(M, T) 的计算引擎"""

    def __init__(
        self,
        method: str = "auto",
        threads: int = 0,
        budget: int = 2**30,
        chunk_size: int = 4096,
        gauge_fix: bool = False,
        verbose: bool = False,
        quiet: bool = True,
        debug_checks: bool = False,
    ):
        """初始化计算引擎

        Args:
            method: auto / brute / linear / quadratic / gray
            threads: 工作线程数，0 表示使用全部 CPU
            budget: 暴力枚举允许的标号数上限
            chunk_size: 每块的标号数
            gauge_fix: 把生成森林上的边固定为单位元，结果乘 |G|^{v0 − 连通分支数}
            verbose: 详细模式
            quiet: 静默模式
            debug_checks: 逐块复核特解满足半平坦方程组
        """
        if method != "auto" and method not in METHODS:
            raise ValueError(f"unknown method '{method}', expected auto or one of {METHODS}")
        self.method = method
        self.threads = threads if threads > 0 else (os.cpu_count() or 1)
        self.budget = budget
        self.chunk_size = chunk_size
        self.gauge_fix = gauge_fix
        self.verbose = verbose
        self.quiet = quiet
        self.debug_checks = debug_checks

    @classmethod
    def from_config(cls, config, **overrides: Any) -> "StateSumEngine":
        """由 Config 构造，overrides 中非 None 的值优先"""
        options = {
            "method": config.get("statesum.method", "auto"),
            "threads": config.threads,
            "budget": config.enumeration_budget,
            "chunk_size": int(config.get("enumeration.chunk_size", 4096)),
            "gauge_fix": bool(config.get("statesum.gauge_fix", False)),
            "verbose": bool(config.get("verbose", False)),
            "quiet": bool(config.get("quiet", False)),
            "debug_checks": bool(config.get("statesum.debug_checks", False)),
        }
        options.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**options)

    # ------------------------------------------------------------------
    # 方法选择
    # ------------------------------------------------------------------

    def candidates(self, S, T) -> tuple[list[str], dict[str, list[str]]]:
        """auto 模式按顺序尝试的方法及各快速路径不适用的原因"""
        diagnostics: dict[str, list[str]] = {}
        order = []
        reasons = linear_reasons(S)
        if reasons:
            diagnostics["linear"] = reasons
        else:
            order.append("linear")
        reasons = quadratic_reasons(S)
        if not reasons:
            p, reasons = kernel_prime(S, T)
            if p is not None:
                order.append("gray" if p == 2 else "quadratic")
        if reasons:
            diagnostics["quadratic"] = reasons
        order.append("brute")
        return order, diagnostics

    async def run(self, S, T, method: Optional[str] = None) -> StateSumResult:
        """计算 Z(M, T)

        Raises:
            MethodNotApplicableError: 指定的快速路径前提不成立
            BudgetExceededError: 暴力枚举超出预算
        """
        method = method or self.method
        start = time.perf_counter()
        title = f"{S.name or 'structure'} on {T.name or 'complex'}"
        ui = MethodUI(title, self.verbose, self.quiet)
        if method == "auto":
            order, diagnostics = self.candidates(S, T)
            for n, candidate in enumerate(order, 1):
                ui.init_method(candidate, n)
            for candidate in order:
                try:
                    result = await self._run_method(S, T, candidate, ui)
                    break
                except MethodNotApplicableError as exc:
                    diagnostics[candidate] = exc.reasons
                    ui.update_method(candidate, "skipped", note="; ".join(exc.reasons))
                except BudgetExceededError as exc:
                    ui.update_method(candidate, "failed", note=str(exc))
                    hint = "; ".join(f"{k}: {', '.join(v)}" for k, v in diagnostics.items())
                    raise BudgetExceededError(exc.what, exc.required, exc.budget, hint or exc.hint)
            result.extra["diagnostics"] = diagnostics
        else:
            result = await self._run_method(S, T, method, ui)
        result.elapsed = time.perf_counter() - start
        result.structure = S.name or str(S)
        result.complex = T.name
        ui.show_summary()
        return result

    async def _run_method(
        self, S, T, method: str, ui: Optional[MethodUI] = None
    ) -> StateSumResult:
        ui = ui or MethodUI(method, self.verbose, self.quiet)
        ui.update_method(method, "running")
        start = time.perf_counter()
        runners = {
            "brute": self._brute,
            "linear": self._linear,
            "quadratic": self._quadratic,
            "gray": self._gray,
        }
        raw, count, extra = await runners[method](S, T)
        ui.update_method(method, "success", time.perf_counter() - start, note=f"{count} labellings")
        normalization = Fraction(S.H.order ** T.v0, S.G.order ** T.v0 * S.H.order ** T.v1)
        return StateSumResult.from_raw(raw, normalization, method, count, extra=extra)

    # ------------------------------------------------------------------
    # 并行
    # ------------------------------------------------------------------

    async def _map_sum(self, fn: Callable[..., np.ndarray], items: Iterable[tuple], m: int):
        """对每个 items 元素在线程中调用 fn，累加返回的直方图

        同时在途的块数不超过 2·threads，避免一次性物化全部块。
        """
        semaphore = asyncio.Semaphore(self.threads)
        total = np.zeros(m, dtype=object)

        async def worker(item: tuple) -> np.ndarray:
            async with semaphore:
                return await asyncio.to_thread(fn, *item)

        window: list[asyncio.Task] = []
        for item in items:
            window.append(asyncio.create_task(worker(item)))
            if len(window) >= 2 * self.threads:
                for hist in await asyncio.gather(*window):
                    total += hist.astype(object)
                window = []
        for hist in await asyncio.gather(*window):
            total += hist.astype(object)
        return total

    def _gauge_factor(self, S, T) -> int:
        if not self.gauge_fix:
            return 1
        return S.G.order ** (T.v0 - component_count(T))

    def _solvable_chunks(self, S, T) -> Iterable[tuple[np.ndarray, np.ndarray]]:
        system = coboundary_system(T, S.H)
        for chunk in flat_g_chunks(T, S.G, self.chunk_size, gauge_fix=self.gauge_fix):
            particulars, ok = system.solve_many(S.alpha0, chunk)
            if self.debug_checks:
                system.check_particulars(S.alpha0, chunk[ok], particulars[ok])
            if np.any(ok):
                yield chunk[ok], particulars[ok]

    # ------------------------------------------------------------------
    # 各方法
    # ------------------------------------------------------------------

    def _brute_chunk(self, S, T, g_rows: np.ndarray, particulars: np.ndarray) -> np.ndarray:
        program = complex_program(T)
        kernel = coboundary_system(T, S.H).kernel
        F, rank = len(T.triangles), S.H.rank
        m, K = S.m, kernel.order
        hist = np.zeros(m, dtype=np.int64)

        def accumulate(g: np.ndarray, comps: np.ndarray) -> None:
            labels = S.H.index_array(comps)
            e = program.evaluate(S, complex_bindings(g, labels))
            hist[:] += np.bincount(np.broadcast_to(e, (len(labels),)), minlength=m)

        if K <= self.chunk_size:
            elements = kernel.elements_chunk(0, K).reshape(K, F, rank)
            per = max(1, self.chunk_size // K)
            for s in range(0, len(g_rows), per):
                part = particulars[s : s + per]
                comps = (part[:, None] + elements[None]).reshape(-1, F, rank)
                accumulate(np.repeat(g_rows[s : s + per], K, axis=0), comps)
        else:
            for g_row, particular in zip(g_rows, particulars):
                for start in range(0, K, self.chunk_size):
                    flat = kernel.elements_chunk(start, start + self.chunk_size)
                    comps = particular[None] + flat.reshape(len(flat), F, rank)
                    accumulate(g_row[None, :], comps)
        return hist

    async def _brute(self, S, T) -> tuple[Cyclotomic, int, dict]:
        kernel_order = coboundary_system(T, S.H).kernel_order
        solvable = sum(len(rows) for rows, _ in self._solvable_chunks(S, T))
        count = solvable * kernel_order
        if count > self.budget:
            raise BudgetExceededError(
                "labelling enumeration", count, self.budget,
                hint="use a fast path (linear / quadratic / gray)",
            )
        items = ((S, T, rows, parts) for rows, parts in self._solvable_chunks(S, T))
        hist = await self._map_sum(self._brute_chunk, items, S.m)
        factor = self._gauge_factor(S, T)
        raw = from_exponent_counts(S.m, list(hist)) * factor
        return raw, count * factor, {"gauge_fix": self.gauge_fix}

    async def _linear(self, S, T) -> tuple[Cyclotomic, int, dict]:
        reasons = linear_reasons(S)
        if reasons:
            raise MethodNotApplicableError("linear", reasons)
        decomposition = split_linear(complex_program(T), S)
        kernel_order = coboundary_system(T, S.H).kernel_order
        solvable = 0

        def chunks():
            nonlocal solvable
            for rows, parts in self._solvable_chunks(S, T):
                solvable += len(rows)
                yield (S, T, decomposition, rows, parts)

        hist = await self._map_sum(linear_chunk, chunks(), S.m)
        factor = self._gauge_factor(S, T) * kernel_order
        raw = from_exponent_counts(S.m, list(hist)) * factor
        count = solvable * kernel_order * self._gauge_factor(S, T)
        return raw, count, {"gauge_fix": self.gauge_fix, "kernel_order": kernel_order}

    def _coset(self, S, T, method: str) -> tuple[int, Optional[np.ndarray]]:
        """G 平凡时唯一的陪集：(核素数, 特解)，无解时特解为 None"""
        reasons = quadratic_reasons(S)
        p = None
        if not reasons:
            p, reasons = kernel_prime(S, T)
        if not reasons and (p == 2) != (method == "gray"):
            reasons = [f"kernel prime {p} requires the {'gray' if p == 2 else 'quadratic'} path"]
        if reasons:
            raise MethodNotApplicableError(method, reasons)
        g_row = np.zeros((1, len(T.edges)), dtype=np.int64)
        particulars, ok = coboundary_system(T, S.H).solve_many(S.alpha0, g_row)
        return p, (particulars[0] if ok[0] else None)

    async def _quadratic(self, S, T) -> tuple[Cyclotomic, int, dict]:
        p, particular = self._coset(S, T, "quadratic")
        kernel = coboundary_system(T, S.H).kernel
        if particular is None:
            return Cyclotomic.zero(S.m), 0, {"kernel_prime": p}
        data = await asyncio.to_thread(quadratic_data, S, T, particular)
        check_quadratic(S, T, particular, data, p)
        raw = await asyncio.to_thread(gauss_sum, data, p)
        return raw, kernel.order, {"kernel_prime": p, "kernel_rank": len(kernel.orders)}

    async def _gray(self, S, T) -> tuple[Cyclotomic, int, dict]:
        p, particular = self._coset(S, T, "gray")
        kernel = coboundary_system(T, S.H).kernel
        if particular is None:
            return Cyclotomic.zero(S.m), 0, {"kernel_prime": p}
        data = await asyncio.to_thread(quadratic_data, S, T, particular)
        check_quadratic(S, T, particular, data, p)
        r = len(kernel.orders)
        ranges = gray_ranges(r, GRAY_LOW_BITS, self.threads)
        items = ((data, start, stop, GRAY_LOW_BITS) for start, stop in ranges)
        hist = await self._map_sum(gray_histogram, items, S.m)
        raw = from_exponent_counts(S.m, list(hist))
        return raw, kernel.order, {"kernel_prime": p, "kernel_rank": r}


def z_total(S, T, method: str = "auto", **options: Any) -> StateSumResult:
    """同步计算 Z(M, T)，options 传给 StateSumEngine"""
    engine = StateSumEngine(method=method, **options)
    return asyncio.run(engine.run(S, T))


def fast_linear(S, T, **options: Any) -> StateSumResult:
    return z_total(S, T, method="linear", **options)


def fast_quadratic(S, T, **options: Any) -> StateSumResult:
    return z_total(S, T, method="quadratic", **options)


def gray_sum(S, T, **options: Any) -> StateSumResult:
    return z_total(S, T, method="gray", **options)
