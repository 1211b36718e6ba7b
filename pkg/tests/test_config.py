"""Tests for ToolkitConfig."""

import pytest
from pydantic import ValidationError

from toricsh.config import (
    KNOWN_SECTIONS,
    ToolkitConfig,
    build_config,
    get_config,
    get_config_unvalidated,
    reload_config,
    split_csv,
)


def test_split_csv():
    assert split_csv(" qh, ,sh ,") == ["qh", "sh"]
    assert split_csv("") == []


def test_defaults():
    config = ToolkitConfig(_env_file=None)
    assert config.get_sections() == list(KNOWN_SECTIONS)
    assert config.get_levels() is None
    assert config.max_model_depth == 8
    assert config.max_blowup_count == 64
    assert config.log_level == "WARNING"


def test_get_sections_canonical_order():
    """Sections come back in report order with duplicates dropped."""
    config = ToolkitConfig(default_sections="bounds, qh,bounds")
    assert config.get_sections() == ["qh", "bounds"]


def test_unknown_section_rejected():
    with pytest.raises(ValidationError, match="Unknown section"):
        ToolkitConfig(default_sections="qh,homology")


def test_get_levels():
    config = ToolkitConfig(default_levels="3, 1")
    assert config.get_levels() == [3, 1]


def test_validate_config_non_integer_levels():
    config = ToolkitConfig(default_levels="1,x")
    with pytest.raises(ValueError, match="DEFAULT_LEVELS must be integers"):
        config.validate_config()


def test_validate_config_non_positive_levels():
    config = ToolkitConfig(default_levels="0")
    with pytest.raises(ValueError, match="DEFAULT_LEVELS must be positive"):
        config.validate_config()


def test_blowup_limit_independent_of_depth():
    config = ToolkitConfig(max_model_depth=8, max_blowup_count=4)
    config.validate_config()
    assert config.max_blowup_count == 4


@pytest.mark.parametrize("depth", [0, 65])
def test_model_depth_bounds(depth):
    with pytest.raises(ValidationError):
        ToolkitConfig(max_model_depth=depth)


def test_invalid_log_level():
    with pytest.raises(ValidationError):
        ToolkitConfig(log_level="TRACE")


def test_settings_from_env(monkeypatch):
    monkeypatch.setenv("TORICSH_MAX_MODEL_DEPTH", "3")
    monkeypatch.setenv("TORICSH_DEFAULT_LEVELS", "2")
    config = ToolkitConfig(_env_file=None)
    assert config.max_model_depth == 3
    assert config.get_levels() == [2]


def test_settings_from_dotenv(tmp_path):
    """The autouse fixture runs each test inside tmp_path, so .env is read from there."""
    (tmp_path / ".env").write_text("TORICSH_LOG_LEVEL=DEBUG\n", encoding="utf-8")
    assert ToolkitConfig().log_level == "DEBUG"


def test_build_config_validates():
    with pytest.raises(ValueError):
        ToolkitConfig(default_levels="-1").validate_config()
    assert build_config().max_model_depth == 8


def test_config_singleton():
    """Test that get_config returns singleton instance."""
    config1 = get_config()
    config2 = get_config()
    assert config1 is config2
    assert get_config_unvalidated() is config1


def test_reload_config_replaces_instance(monkeypatch):
    first = get_config()
    monkeypatch.setenv("TORICSH_MAX_BLOWUP_COUNT", "100")
    second = reload_config()
    assert second is not first
    assert get_config().max_blowup_count == 100
