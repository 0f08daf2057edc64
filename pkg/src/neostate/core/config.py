"""配置管理模块"""
import copy
import os
from pathlib import Path
from typing import Any, Optional

import yaml
from rich.console import Console

console = Console()

ENV_BUDGET = "NEOSTATE_ENUM_BUDGET"
ENV_THREADS = "NEOSTATE_THREADS"


def locate_file(path: str, search_dir: Optional[Path] = None) -> Path:
    """相对路径在当前目录找不到时再到 search_dir 下找；都没有时原样返回"""
    candidate = Path(path).expanduser()
    if candidate.is_absolute() or candidate.exists() or search_dir is None:
        return candidate
    fallback = Path(search_dir) / candidate
    return fallback if fallback.exists() else candidate


class Config:
    """配置管理类"""

    DEFAULT_CONFIG = {
        "enumeration": {
            "budget": 2**30,
            "chunk_size": 4096,
        },
        "statesum": {
            "method": "auto",
            "gauge_fix": False,
            "threads": 0,
            "debug_checks": False,
        },
        "pachner": {
            "budget": 20_000_000,
        },
        "equivalence": {
            "budget": 2_000_000,
            "widen_automorphisms": False,
        },
        "output": {
            "precision": 12,
        },
        "verbose": False,
        "quiet": False,
    }

    def __init__(self, config_path: Optional[Path] = None):
        """初始化配置

        Args:
            config_path: 自定义配置文件路径，如果为 None 则使用默认路径
        """
        self.neostate_dir = Path.home() / ".neostate"
        self.config_path = config_path or (self.neostate_dir / "config.yaml")
        self.complexes_dir = self.neostate_dir / "complexes"
        self.structures_dir = self.neostate_dir / "structures"

        self.config_data: dict[str, Any] = copy.deepcopy(self.DEFAULT_CONFIG)

    def init_directories(self) -> None:
        """初始化目录结构"""
        self.neostate_dir.mkdir(parents=True, exist_ok=True)
        self.complexes_dir.mkdir(exist_ok=True)
        self.structures_dir.mkdir(exist_ok=True)

    def create_default_config(self) -> None:
        """创建默认配置文件"""
        self.config_path.parent.mkdir(parents=True, exist_ok=True)

        with open(self.config_path, "w", encoding="utf-8") as f:
            yaml.dump(self.DEFAULT_CONFIG, f, default_flow_style=False, allow_unicode=True)

        console.print(f"[green]✓[/green] 配置文件已创建: {self.config_path}")

    def load(self) -> dict[str, Any]:
        """加载配置文件并应用环境变量覆盖

        配置文件不存在时静默使用默认配置。

        Returns:
            配置字典
        """
        self.config_data = copy.deepcopy(self.DEFAULT_CONFIG)
        if self.config_path.exists():
            try:
                with open(self.config_path, "r", encoding="utf-8") as f:
                    user = yaml.safe_load(f) or {}
                self.config_data = self._merge_config(self.DEFAULT_CONFIG, user)
            except (OSError, yaml.YAMLError) as e:
                console.print(f"[red]错误:[/red] 加载配置文件失败: {e}")
                console.print("[yellow]使用默认配置[/yellow]")

        self._apply_env()
        return self.config_data

    def _apply_env(self) -> None:
        """环境变量优先于配置文件"""
        for env, key in ((ENV_BUDGET, "enumeration.budget"), (ENV_THREADS, "statesum.threads")):
            raw = os.environ.get(env)
            if raw is None:
                continue
            try:
                self.set(key, int(raw))
            except ValueError:
                console.print(f"[yellow]警告:[/yellow] 忽略非法环境变量 {env}={raw!r}")

    def _merge_config(self, default: dict, user: dict) -> dict:
        """合并默认配置和用户配置

        Args:
            default: 默认配置
            user: 用户配置

        Returns:
            合并后的配置
        """
        result = copy.deepcopy(default)
        for key, value in user.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self._merge_config(result[key], value)
            else:
                result[key] = value
        return result

    def get(self, key: str, default: Any = None) -> Any:
        """获取配置值（支持点号访问嵌套字段）

        Args:
            key: 配置键，支持 "enumeration.budget" 格式
            default: 默认值

        Returns:
            配置值
        """
        keys = key.split(".")
        value = self.config_data

        for k in keys:
            if isinstance(value, dict):
                value = value.get(k)
                if value is None:
                    return default
            else:
                return default

        return value

    def set(self, key: str, value: Any) -> None:
        """设置配置值（支持点号访问嵌套字段）"""
        keys = key.split(".")
        node = self.config_data
        for k in keys[:-1]:
            node = node.setdefault(k, {})
        node[keys[-1]] = value

    @property
    def enumeration_budget(self) -> int:
        return int(self.get("enumeration.budget", 2**30))

    @property
    def threads(self) -> int:
        """工作线程数，0 表示使用全部 CPU"""
        threads = int(self.get("statesum.threads", 0))
        return threads if threads > 0 else (os.cpu_count() or 1)
