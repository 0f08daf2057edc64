#!/usr/bin/env python3
"""Neostate 安装检查

依次检查解释器版本、依赖、包导入、命令行入口、内置三角剖分，最后在 ∂Δ⁵ 上
计算一次 Z = 1。每项检查返回 (是否通过, 说明)。
"""

import importlib
import shutil
import sys
from pathlib import Path

REQUIRED = {"typer": "typer", "rich": "rich", "yaml": "pyyaml", "numpy": "numpy", "sympy": "sympy"}
DATA_DIR = Path(__file__).parent / "src" / "neostate" / "complex" / "data"


def python_version() -> tuple[bool, str]:
    v = sys.version_info
    return v >= (3, 10), f"Python {v.major}.{v.minor}.{v.micro}（需要 3.10+）"


def dependencies() -> tuple[bool, str]:
    missing = []
    for module, dist in REQUIRED.items():
        try:
            importlib.import_module(module)
        except ImportError:
            missing.append(dist)
    if missing:
        return False, "缺少 " + ", ".join(missing)
    return True, ", ".join(REQUIRED.values())


def package() -> tuple[bool, str]:
    import neostate

    return True, f"neostate {neostate.__version__}"


def cli_entry() -> tuple[bool, str]:
    path = shutil.which("neostate")
    return (True, path) if path else (False, "未找到 neostate 命令，请先安装或激活虚拟环境")


def bundled_complexes() -> tuple[bool, str]:
    files = sorted(p.stem for p in DATA_DIR.glob("*.txt"))
    return bool(files), ", ".join(files) or f"{DATA_DIR} 中没有三角剖分文件"


def smoke() -> tuple[bool, str]:
    from neostate.complex import boundary_of_5simplex
    from neostate.core.engine import z_total
    from neostate.structure import br_iota1

    result = z_total(br_iota1(2, 1), boundary_of_5simplex())
    return result.value == 1, f"Z(S4) = {result.value}（{result.method}）"


CHECKS = [
    ("Python", python_version),
    ("依赖", dependencies),
    ("包导入", package),
    ("命令行", cli_entry),
    ("三角剖分", bundled_complexes),
    ("态和", smoke),
]


def main() -> int:
    results = []
    for name, check in CHECKS:
        try:
            ok, detail = check()
        except Exception as e:
            ok, detail = False, f"检查出错: {e}"
        results.append(ok)
        print(f"[{'OK' if ok else 'FAIL':4}] {name:8} {detail}")

    passed = sum(results)
    print(f"\n{passed}/{len(results)} 项通过")
    if passed < len(results):
        print("请运行 poetry install（或 pip install -e .）后重试")
        return 1
    print("下一步: neostate init && neostate list-builtins")
    return 0


if __name__ == "__main__":
    sys.exit(main())
