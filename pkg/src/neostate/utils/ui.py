"""终端 UI：方法进度、报告表格与加载动画"""
from typing import Any, Iterable, Optional

from rich.console import Console
from rich.live import Live
from rich.spinner import Spinner
from rich.table import Table

console = Console()

STATUS_DISPLAY = {
    "success": "[green]✓ 完成[/green]",
    "running": "[blue]▶ 执行中[/blue]",
    "failed": "[red]✗ Failed[/red]",
    "skipped": "[yellow]⊘ Skipped[/yellow]",
    "pending": "[dim]⏸ 等待[/dim]",
}


class MethodUI:
    """auto 模式下各计算方法的状态显示"""

    def __init__(self, title: str, verbose: bool = False, quiet: bool = True):
        """初始化 UI

        Args:
            title: 表格标题（通常为结构与复形名）
            verbose: 详细模式，逐条打印方法状态
            quiet: 静默模式，不输出任何内容
        """
        self.title = title
        self.verbose = verbose
        self.quiet = quiet
        self.methods: dict[str, dict[str, Any]] = {}

    def init_method(self, method: str, order: int, note: str = ""):
        self.methods[method] = {
            "name": method,
            "order": order,
            "status": "pending",
            "duration": 0.0,
            "note": note,
        }

    def update_method(
        self,
        method: str,
        status: str,
        duration: Optional[float] = None,
        note: Optional[str] = None,
    ):
        """更新方法状态

        Args:
            method: 方法名
            status: pending / running / success / failed / skipped
            duration: 耗时（秒）
            note: 附注，如不适用原因
        """
        if method not in self.methods:
            self.init_method(method, len(self.methods) + 1)
        entry = self.methods[method]
        entry["status"] = status
        if duration is not None:
            entry["duration"] = duration
        if note:
            entry["note"] = note
        self._print_update(entry)

    def _print_update(self, entry: dict[str, Any]):
        if self.quiet or not self.verbose:
            return
        name, status = entry["name"], entry["status"]
        if status == "running":
            console.print(f"[blue]▶ RUN[/blue]   {name}")
        elif status == "success":
            console.print(f"[green]✓[/green] {name} - 完成 ({entry['duration']:.2f}s)")
        elif status == "skipped":
            console.print(f"[yellow]⊘[/yellow] {name} - 跳过 ({entry['note']})")
        elif status == "failed":
            console.print(f"[red]✗[/red] {name} - 失败: {entry['note']}")

    def create_table(self) -> Table:
        table = Table(title=self.title, show_header=True, header_style="bold cyan")
        table.add_column("方法", style="white", width=10)
        table.add_column("order", justify="center", width=7)
        table.add_column("时间", justify="right", width=8)
        table.add_column("状态", width=14)
        table.add_column("说明")
        for entry in sorted(self.methods.values(), key=lambda e: e["order"]):
            done = entry["status"] in ("success", "failed")
            table.add_row(
                entry["name"],
                str(entry["order"]),
                f"{entry['duration']:.2f}s" if done else "-",
                STATUS_DISPLAY.get(entry["status"], entry["status"]),
                entry["note"] or "[dim]-[/dim]",
            )
        return table

    def show_summary(self):
        """详细模式下打印方法表"""
        if self.verbose and not self.quiet:
            console.print(self.create_table())


def report_table(title: str, rows: Iterable[tuple[str, bool, int, str]]) -> Table:
    """(名称, 是否通过, 检查数, 说明) 行组成的通过/失败表"""
    table = Table(title=title, show_header=True, header_style="bold cyan")
    table.add_column("检查项", style="white")
    table.add_column("结果", width=10)
    table.add_column("检查数", justify="right")
    table.add_column("说明")
    for name, passed, checked, detail in rows:
        mark = "[green]✓ pass[/green]" if passed else "[red]✗ FAIL[/red]"
        table.add_row(name, mark, str(checked), detail or "[dim]-[/dim]")
    return table


def counterexample_table(counterexample: dict[str, Any], title: str = "反例") -> Table:
    table = Table(title=title, show_header=False)
    table.add_column("变量", style="cyan")
    table.add_column("取值", style="magenta")
    for key, value in counterexample.items():
        table.add_row(str(key), str(value))
    return table


class SimpleSpinner:
    """简单的加载动画，静默模式下不显示"""

    def __init__(self, text: str, enabled: bool = True):
        """初始化加载动画

        Args:
            text: 显示文本
            enabled: False 时 start/stop 不做任何事
        """
        self.text = text
        self.enabled = enabled
        self.spinner = Spinner("dots", text=text)
        self.live: Optional[Live] = None

    def start(self):
        if not self.enabled:
            return
        self.live = Live(self.spinner, console=console, transient=True)
        self.live.start()

    def stop(self):
        if self.live:
            self.live.stop()
            self.live = None

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.stop()
