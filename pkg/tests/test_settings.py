from pathlib import Path

import pytest
from pydantic import ValidationError

from hamilton_toughness.hamilton import DEFAULT_DP_MAX_N
from hamilton_toughness.settings import Settings


@pytest.fixture
def config_home(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path))
    return tmp_path / "hamilton-toughness"


def test_load_writes_defaults(config_home: Path) -> None:
    settings = Settings.load()
    assert settings.hamilton.dp_max_n == DEFAULT_DP_MAX_N
    assert settings.harness.jobs == 1
    assert (config_home / "settings.toml").is_file()


def test_file_overrides_defaults(config_home: Path) -> None:
    config_home.mkdir(parents=True)
    (config_home / "settings.toml").write_text(
        "[hamilton]\ndp_max_n = 12\n\n[harness]\njobs = 4\ndensity = 0.25\n"
    )
    settings = Settings.load()
    assert settings.hamilton.dp_max_n == 12
    assert settings.harness.jobs == 4
    assert settings.harness.density == 0.25
    assert settings.toughness.max_n == Settings().toughness.max_n


def test_save_round_trips(config_home: Path) -> None:
    settings = Settings()
    settings.toughness.max_n = 18
    settings.save()
    assert Settings.load().toughness.max_n == 18


def test_invalid_values_rejected(config_home: Path) -> None:
    config_home.mkdir(parents=True)
    (config_home / "settings.toml").write_text("[harness]\njobs = 0\n")
    with pytest.raises(ValidationError):
        Settings.load()
