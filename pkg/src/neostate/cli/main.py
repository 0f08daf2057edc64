"""CLI 主入口"""
import asyncio
import json
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, Optional

import typer
from rich.console import Console
from rich.table import Table

from .. import __version__
from ..complex import (
    BUILTIN_COMPLEXES,
    MODIFIERS,
    OrderedTriangulation,
    complex_from_spec,
    euler_characteristic,
    homology as complex_homology,
    random_permutation,
    relabel_vertices,
    reverse_orientation,
)
from ..core.config import Config
from ..core.engine import StateSumEngine
from ..core.errors import (
    BudgetExceededError,
    LabellingError,
    MethodNotApplicableError,
    NeostateError,
    StructureError,
    TriangulationError,
    VerificationError,
)
from ..equivalence import (
    dump_equivalence,
    load_equivalence,
    search_equivalence,
    verify_equivalence,
)
from ..labelling import LabellingStream
from ..statesum.pachner import MOVES, pachner_oracle
from ..structure import (
    BUILTIN_STRUCTURES,
    SemiWeakStructure,
    require_verified,
    structure_from_spec,
    verify_all,
)
from ..utils.ui import SimpleSpinner, counterexample_table, report_table

app = typer.Typer(
    name="neostate",
    help="Neostate - 4 维流形态和不变量精确计算工具",
    add_completion=False,
)

console = Console()

EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

JSON_OPTION = typer.Option(False, "--json", help="输出单个 JSON 文档")
THREADS_OPTION = typer.Option(None, "--threads", help="工作线程数，默认使用全部 CPU")
VERBOSE_OPTION = typer.Option(False, "--verbose", "-v", help="详细输出模式")
QUIET_OPTION = typer.Option(False, "--quiet", "-q", help="静默模式")
CONFIG_OPTION = typer.Option(None, "--config", "-c", help="自定义配置文件路径")


def _load_config(config_path: Optional[str], threads: Optional[int] = None) -> Config:
    config = Config(Path(config_path) if config_path else None)
    config.load()
    if threads is not None:
        config.set("statesum.threads", threads)
    return config


def _structure(spec: str, config: Config) -> SemiWeakStructure:
    return structure_from_spec(spec, config.structures_dir)


def _complex(spec: str, config: Config) -> OrderedTriangulation:
    return complex_from_spec(spec, config.complexes_dir)


def _emit_json(payload: dict[str, Any]) -> None:
    typer.echo(json.dumps(payload, sort_keys=True, ensure_ascii=False))


@contextmanager
def _guard(as_json: bool, verbose: bool = False) -> Iterator[None]:
    """把库异常转换为退出码：1 数学失败，2 用法错误，3 预算或方法拒绝"""
    try:
        yield
    except typer.Exit:
        raise
    except VerificationError as e:
        _fail(as_json, "verification", str(e), EXIT_FAILURE)
    except (BudgetExceededError, MethodNotApplicableError) as e:
        _fail(as_json, "refused", str(e), EXIT_BUDGET)
    except (StructureError, TriangulationError, LabellingError, FileNotFoundError, ValueError) as e:
        _fail(as_json, "usage", str(e), EXIT_USAGE)
    except NeostateError as e:
        if verbose:
            import traceback

            console.print(traceback.format_exc())
        _fail(as_json, "error", str(e), EXIT_FAILURE)


def _fail(as_json: bool, kind: str, message: str, code: int) -> None:
    if as_json:
        _emit_json({"error": kind, "message": message, "exit_code": code})
    else:
        console.print(f"[red]错误:[/red] {message}")
    raise typer.Exit(code)


def _print_counterexample(counterexample: Optional[dict[str, Any]]) -> None:
    if counterexample:
        console.print(counterexample_table(counterexample))


@app.command()
def version():
    """显示版本信息"""
    console.print(f"Neostate v{__version__}")


@app.command()
def init(
    force: bool = typer.Option(False, "--force", "-f", help="强制重新初始化，覆盖现有配置")
):
    """初始化 Neostate 配置和目录结构"""
    config = Config()

    if config.config_path.exists() and not force:
        console.print("[yellow]配置文件已存在，使用 --force 强制重新初始化[/yellow]")
        return

    config.init_directories()
    console.print(f"[green]✓[/green] 目录结构已创建: {config.neostate_dir}")
    config.create_default_config()

    console.print("\n[green]初始化完成！[/green]")
    console.print(f"配置文件: {config.config_path}")
    console.print(f"复形目录: {config.complexes_dir}")
    console.print(f"结构目录: {config.structures_dir}")


def _catalogue(entries: dict[str, tuple[str, str]]) -> dict[str, dict[str, str]]:
    return {k: {"syntax": s, "description": d} for k, (s, d) in entries.items()}


@app.command("list-builtins")
def list_builtins(as_json: bool = JSON_OPTION):
    """列出内置复形与结构"""
    if as_json:
        _emit_json(
            {
                "complexes": _catalogue(BUILTIN_COMPLEXES),
                "modifiers": dict(MODIFIERS),
                "structures": _catalogue(BUILTIN_STRUCTURES),
            }
        )
        return

    console.print("\n[bold cyan]内置复形:[/bold cyan]")
    for syntax, description in BUILTIN_COMPLEXES.values():
        console.print(f"  [green]{syntax:30}[/green] {description}")
    for name, description in MODIFIERS.items():
        console.print(f"  [dim]/{name:29}[/dim] {description}")

    console.print("\n[bold cyan]内置结构:[/bold cyan]")
    for syntax, description in BUILTIN_STRUCTURES.values():
        console.print(f"  [green]{syntax:30}[/green] {description}")


@app.command("verify-structure")
def verify_structure(
    structure: str = typer.Option(..., "--structure", "-s", help="结构 (如 br-tau:3,1 或 file:path)"),
    config_path: Optional[str] = CONFIG_OPTION,
    as_json: bool = JSON_OPTION,
    verbose: bool = VERBOSE_OPTION,
    quiet: bool = QUIET_OPTION,
):
    """穷举验证结构的规范化与全部相干恒等式"""
    config = _load_config(config_path)
    with _guard(as_json, verbose):
        S = _structure(structure, config)
        with SimpleSpinner(f"验证 {S.name or structure} ...", enabled=not (quiet or as_json)):
            report = verify_all(S)

    if as_json:
        _emit_json(report.to_dict())
    elif not quiet:
        for message in report.normalization:
            console.print(f"[red]✗[/red] {message}")
        rows = [(c.name.value, c.passed, c.checked, c.detail) for c in report.checks]
        console.print(report_table(f"Structure: {report.structure}", rows))
        for check in report.failures():
            _print_counterexample(check.counterexample)
        status = "[green]✓ 全部通过[/green]" if report.passed else "[red]✗ 有失败[/red]"
        console.print(f"状态: {status}")

    if not report.passed:
        raise typer.Exit(EXIT_FAILURE)


@app.command("equivalence-check")
def equivalence_check(
    structure: str = typer.Option(..., "--structure", "-s", help="源结构"),
    target: str = typer.Option(..., "--target", "-t", help="靶结构"),
    witness: Optional[str] = typer.Option(None, "--witness", "-w", help="见证文件，缺省时搜索"),
    save: Optional[str] = typer.Option(None, "--save", help="把找到的见证写入文件"),
    budget: Optional[int] = typer.Option(None, "--budget", help="搜索的赋值次数上限"),
    widen: Optional[bool] = typer.Option(
        None, "--widen/--identity-automorphisms", help="搜索时遍历全部自同构"
    ),
    config_path: Optional[str] = CONFIG_OPTION,
    as_json: bool = JSON_OPTION,
    verbose: bool = VERBOSE_OPTION,
    quiet: bool = QUIET_OPTION,
):
    """验证或搜索两个结构之间的 2-等价见证"""
    config = _load_config(config_path)
    with _guard(as_json, verbose):
        S, S2 = _structure(structure, config), _structure(target, config)
        if witness:
            E = load_equivalence(witness, S)
            report = verify_equivalence(S, S2, E)
            payload = {"mode": "verify", **report.to_dict()}
            passed = report.passed
        else:
            budget = budget if budget is not None else int(config.get("equivalence.budget"))
            if widen is None:
                widen = bool(config.get("equivalence.widen_automorphisms", False))
            with SimpleSpinner("搜索见证 ...", enabled=not (quiet or as_json or verbose)):
                result = search_equivalence(
                    S, S2, budget=budget, widen_automorphisms=widen, verbose=verbose and not quiet
                )
            if result.status == "budget":
                raise BudgetExceededError("equivalence search", result.explored, budget)
            report = result.report
            payload = {"mode": "search", **result.to_dict()}
            passed = result.found
            if result.found and save:
                dump_equivalence(result.witness, S, save)

    if as_json:
        _emit_json(payload)
    elif not quiet:
        for message in (report.data_failures if report else []):
            console.print(f"[red]✗[/red] {message}")
        if report is not None and report.checks:
            rows = [(f"condition {c.number}", c.passed, c.checked, c.detail) for c in report.checks]
            console.print(report_table(f"{S.name} ≃ {S2.name}", rows))
            for check in report.failures():
                args = dict(enumerate(check.counterexample or ()))
                _print_counterexample({f"arg{k}": v for k, v in args.items()})
        if not witness:
            console.print(f"搜索: {result.status} ({result.explored} 次赋值) {result.detail}")
            if result.found and save:
                console.print(f"[green]✓[/green] 见证已保存: {save}")
        status = "[green]✓ 等价[/green]" if passed else "[red]✗ 未证实等价[/red]"
        console.print(f"状态: {status}")

    if not passed:
        raise typer.Exit(EXIT_FAILURE)


@app.command("pachner-check")
def pachner_check(
    structure: str = typer.Option(..., "--structure", "-s", help="结构"),
    move: str = typer.Option("all", "--move", "-m", help="3-3、2-4、1-5 或 all"),
    budget: Optional[int] = typer.Option(None, "--budget", help="局部标号数上限"),
    config_path: Optional[str] = CONFIG_OPTION,
    as_json: bool = JSON_OPTION,
    verbose: bool = VERBOSE_OPTION,
    quiet: bool = QUIET_OPTION,
):
    """对结构检验 Pachner 移动下的不变性"""
    config = _load_config(config_path)
    with _guard(as_json, verbose):
        moves = list(MOVES) if move == "all" else [move]
        for name in moves:
            if name not in MOVES:
                raise ValueError(f"unknown move '{name}', expected one of {', '.join(MOVES)} or all")
        S = _structure(structure, config)
        budget = budget if budget is not None else int(config.get("pachner.budget"))
        chunk_size = int(config.get("enumeration.chunk_size", 4096))
        reports = []
        for name in moves:
            with SimpleSpinner(f"Pachner {name} ...", enabled=not (quiet or as_json)):
                reports.append(pachner_oracle(S, name, budget=budget, chunk_size=chunk_size))

    passed = all(r.passed for r in reports)
    if as_json:
        _emit_json({"structure": S.name, "passed": passed, "moves": [r.to_dict() for r in reports]})
    elif not quiet:
        rows = [(r.move, r.passed, r.checked, r.detail) for r in reports]
        console.print(report_table(f"Pachner: {S.name}", rows))
        for r in reports:
            _print_counterexample(r.counterexample)

    if not passed:
        raise typer.Exit(EXIT_FAILURE)


@app.command()
def compute(
    complex_spec: str = typer.Option(..., "--complex", "-x", help="复形 (如 s4、cp2、s3xs1:3)"),
    structure: str = typer.Option(..., "--structure", "-s", help="结构"),
    method: Optional[str] = typer.Option(None, "--method", help="auto/brute/linear/quadratic/gray"),
    reversed_: bool = typer.Option(False, "--reversed", help="翻转定向"),
    relabel: Optional[int] = typer.Option(None, "--relabel", help="按种子随机置换顶点顺序"),
    gauge_fix: Optional[bool] = typer.Option(None, "--gauge-fix/--no-gauge-fix", help="固定生成森林"),
    budget: Optional[int] = typer.Option(None, "--budget", help="暴力枚举的标号数上限"),
    config_path: Optional[str] = CONFIG_OPTION,
    as_json: bool = JSON_OPTION,
    threads: Optional[int] = THREADS_OPTION,
    verbose: bool = VERBOSE_OPTION,
    quiet: bool = QUIET_OPTION,
):
    """先完整验证结构，再精确计算态和 Z(M, T)"""
    config = _load_config(config_path, threads)
    with _guard(as_json, verbose):
        T = _complex(complex_spec, config)
        if reversed_:
            T = reverse_orientation(T)
        if relabel is not None:
            T = relabel_vertices(T, random_permutation(T.v0, relabel))
        S = require_verified(_structure(structure, config))
        engine = StateSumEngine.from_config(
            config,
            method=method,
            budget=budget,
            gauge_fix=gauge_fix,
            verbose=verbose,
            quiet=quiet or as_json,
        )
        with SimpleSpinner(f"计算 {S.name} on {T.name} ...", enabled=not (quiet or as_json or verbose)):
            result = asyncio.run(engine.run(S, T))

    precision = int(config.get("output.precision", 12))
    if as_json:
        payload = result.to_dict(precision)
        payload.pop("elapsed", None)
        _emit_json(payload)
        return
    if quiet:
        typer.echo(str(result.value))
        return
    approx = result.approx(precision)
    table = Table(title=f"Z({T.name}) with {S.name}", show_header=False)
    table.add_column("项", style="cyan")
    table.add_column("值", style="white")
    table.add_row("value", f"[bold]{result.value}[/bold]")
    table.add_row("normalization", str(result.normalization))
    table.add_row("raw sum", str(result.raw))
    table.add_row("approx", f"{approx.real} {'+' if approx.imag >= 0 else '-'} {abs(approx.imag)}i")
    table.add_row("method", result.method)
    table.add_row("labellings", str(result.count))
    table.add_row("time", f"{result.elapsed:.2f}s")
    console.print(table)


@app.command("count-labellings")
def count_labellings(
    complex_spec: str = typer.Option(..., "--complex", "-x", help="复形"),
    structure: str = typer.Option(..., "--structure", "-s", help="结构"),
    config_path: Optional[str] = CONFIG_OPTION,
    as_json: bool = JSON_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """统计可容许标号数（不枚举 h）"""
    config = _load_config(config_path)
    with _guard(as_json, verbose):
        T = _complex(complex_spec, config)
        S = _structure(structure, config)
        debug_checks = bool(config.get("statesum.debug_checks", False))
        count = LabellingStream(T, S, debug_checks=debug_checks).count()

    if as_json:
        _emit_json({"complex": T.name, "structure": S.name, "labellings": count})
    else:
        typer.echo(str(count))


@app.command()
def homology(
    complex_spec: str = typer.Option(..., "--complex", "-x", help="复形"),
    coefficients: int = typer.Option(0, "--coefficients", "-n", help="系数 Z/n，0 表示 Z"),
    config_path: Optional[str] = CONFIG_OPTION,
    as_json: bool = JSON_OPTION,
    verbose: bool = VERBOSE_OPTION,
    quiet: bool = QUIET_OPTION,
):
    """计算复形的同调群与欧拉示性数"""
    config = _load_config(config_path)
    with _guard(as_json, verbose):
        T = _complex(complex_spec, config)
        groups = complex_homology(T, coefficients)
        chi = euler_characteristic(T)

    if as_json:
        _emit_json(
            {
                "complex": T.name,
                "coefficients": coefficients,
                "f_vector": list(T.f_vector),
                "euler_characteristic": chi,
                "homology": [str(g) for g in groups],
            }
        )
        return
    ring = "Z" if coefficients == 0 else f"Z/{coefficients}"
    table = Table(title=f"H_*({T.name}; {ring})", show_header=True, header_style="bold cyan")
    table.add_column("k", justify="center")
    table.add_column("H_k")
    for k, group in enumerate(groups):
        table.add_row(str(k), str(group))
    console.print(table)
    if not quiet:
        console.print(f"f-vector: {list(T.f_vector)}  χ = {chi}")


if __name__ == "__main__":
    app()
