"""测试终端 UI 组件"""
from rich.console import Console

from neostate.utils.ui import (
    MethodUI,
    SimpleSpinner,
    counterexample_table,
    report_table,
)


def _render(table) -> str:
    console = Console(width=120, record=True)
    console.print(table)
    return console.export_text()


def test_method_ui_tracks_status():
    ui = MethodUI("br-tau:3,1 on s4", verbose=False, quiet=True)
    ui.init_method("quadratic", 1)
    ui.init_method("brute", 2)
    ui.update_method("quadratic", "skipped", note="kernel is not prime")
    ui.update_method("brute", "success", 1.5)

    assert ui.methods["quadratic"]["note"] == "kernel is not prime"
    assert ui.methods["brute"]["duration"] == 1.5
    table = ui.create_table()
    assert table.row_count == 2
    text = _render(table)
    assert "1.50s" in text
    assert "kernel is not prime" in text


def test_update_unknown_method_appends():
    ui = MethodUI("t")
    ui.update_method("gray", "running")
    assert ui.methods["gray"]["order"] == 1
    assert ui.methods["gray"]["status"] == "running"


def test_verbose_output(capsys):
    ui = MethodUI("t", verbose=True, quiet=False)
    ui.update_method("linear", "failed", note="budget")
    ui.show_summary()
    out = capsys.readouterr().out
    assert "linear" in out
    assert "budget" in out


def test_report_table():
    rows = [("PENT1", True, 81, ""), ("HEX", False, 9, "counterexample (1, 2, 1)")]
    table = report_table("identities", rows)
    assert table.row_count == 2
    text = _render(table)
    assert "FAIL" in text and "pass" in text


def test_counterexample_table():
    table = counterexample_table({"g01": 1, "h012": 2})
    assert table.row_count == 2
    assert "h012" in _render(table)


def test_disabled_spinner_is_noop():
    with SimpleSpinner("计算中", enabled=False) as spinner:
        assert spinner.live is None
    assert spinner.live is None
