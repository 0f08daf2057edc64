"""Tests for config module."""
from pathlib import Path

from neostate.core.config import Config, locate_file


def test_config_default_values():
    config = Config()
    assert config.neostate_dir == Path.home() / ".neostate"
    assert config.config_path == config.neostate_dir / "config.yaml"
    assert config.complexes_dir == config.neostate_dir / "complexes"
    assert config.structures_dir == config.neostate_dir / "structures"
    assert config.get("statesum.method") == "auto"
    assert config.enumeration_budget == 2**30


def test_config_merge():
    config = Config()
    default = {"a": 1, "b": {"c": 2, "d": 3}}
    user = {"b": {"c": 5}, "e": 6}

    result = config._merge_config(default, user)

    assert result["a"] == 1
    assert result["b"]["c"] == 5
    assert result["b"]["d"] == 3
    assert result["e"] == 6


def test_config_get_and_set_nested():
    config = Config()
    config.config_data = {"statesum": {"method": "brute"}}

    assert config.get("statesum.method") == "brute"
    assert config.get("statesum.threads", 4) == 4
    assert config.get("nonexistent", "default") == "default"

    config.set("pachner.budget", 10)
    assert config.get("pachner.budget") == 10
    config.set("statesum.gauge_fix", False)
    assert config.get("statesum.gauge_fix", True) is False


def test_load_merges_user_file(tmp_path, monkeypatch):
    monkeypatch.delenv("NEOSTATE_ENUM_BUDGET", raising=False)
    monkeypatch.delenv("NEOSTATE_THREADS", raising=False)
    path = tmp_path / "config.yaml"
    path.write_text("statesum:\n  method: linear\nenumeration:\n  budget: 1000\n", encoding="utf-8")

    config = Config(path)
    data = config.load()

    assert data["statesum"]["method"] == "linear"
    assert data["statesum"]["gauge_fix"] is False
    assert config.enumeration_budget == 1000
    assert config.get("enumeration.chunk_size") == 4096


def test_load_without_file_uses_defaults(tmp_path, monkeypatch):
    monkeypatch.delenv("NEOSTATE_ENUM_BUDGET", raising=False)
    monkeypatch.delenv("NEOSTATE_THREADS", raising=False)
    config = Config(tmp_path / "missing.yaml")
    assert config.load() == Config.DEFAULT_CONFIG


def test_create_default_config(tmp_path, monkeypatch):
    monkeypatch.delenv("NEOSTATE_ENUM_BUDGET", raising=False)
    path = tmp_path / "nested" / "config.yaml"
    config = Config(path)
    config.create_default_config()
    assert path.exists()
    assert Config(path).load()["pachner"]["budget"] == 20_000_000


def test_environment_overrides(tmp_path, monkeypatch):
    monkeypatch.setenv("NEOSTATE_ENUM_BUDGET", "123")
    monkeypatch.setenv("NEOSTATE_THREADS", "3")
    config = Config(tmp_path / "config.yaml")
    config.load()
    assert config.enumeration_budget == 123
    assert config.threads == 3


def test_invalid_environment_value_is_ignored(tmp_path, monkeypatch):
    monkeypatch.setenv("NEOSTATE_ENUM_BUDGET", "lots")
    monkeypatch.delenv("NEOSTATE_THREADS", raising=False)
    config = Config(tmp_path / "config.yaml")
    config.load()
    assert config.enumeration_budget == 2**30
    assert config.threads >= 1


def test_broken_config_file_falls_back(tmp_path, monkeypatch):
    monkeypatch.delenv("NEOSTATE_ENUM_BUDGET", raising=False)
    path = tmp_path / "config.yaml"
    path.write_text("statesum: [unclosed\n", encoding="utf-8")
    config = Config(path)
    assert config.load()["statesum"]["method"] == "auto"


def test_default_keys_are_consumed():
    assert Config.DEFAULT_CONFIG["statesum"]["debug_checks"] is False
    assert Config.DEFAULT_CONFIG["output"] == {"precision": 12}


def test_locate_file_prefers_existing_path(tmp_path, monkeypatch):
    library = tmp_path / "library"
    library.mkdir()
    (library / "t.yaml").write_text("x", encoding="utf-8")
    monkeypatch.chdir(tmp_path)

    assert locate_file("t.yaml", library) == library / "t.yaml"
    assert locate_file("t.yaml") == Path("t.yaml")
    assert locate_file("missing.yaml", library) == Path("missing.yaml")

    (tmp_path / "t.yaml").write_text("y", encoding="utf-8")
    assert locate_file("t.yaml", library) == Path("t.yaml")
    assert locate_file(str(library / "t.yaml"), tmp_path) == library / "t.yaml"
