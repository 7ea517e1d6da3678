import os

import pytest

from src.twodiv.config import load_config, load_environment
from src.twodiv.errors import ConfigError
from src.twodiv.models import SIX_WEIGHTS


def test_shipped_defaults():
    config = load_config()
    assert config.theorem.weights == list(SIX_WEIGHTS)
    assert config.theorem.m_list == [1, 3, 5, 7]
    assert config.theorem.tau_b_max == 6
    assert config.lemmas.odd_max == 9
    assert config.workers == 1
    assert config.log_level == "WARNING"


def test_config_file_from_environment(tmp_path, monkeypatch):
    path = tmp_path / "grid.yaml"
    path.write_text("theorem:\n  weights: [16, 12]\n  a_max: 1\nworkers: 3\n")
    monkeypatch.setenv("TWODIV_CONFIG", str(path))
    config = load_config()
    assert config.theorem.weights == [12, 16]
    assert config.theorem.a_max == 1
    assert config.theorem.b_max == 4
    assert config.workers == 3


def test_explicit_path_beats_environment(tmp_path, monkeypatch):
    first, second = tmp_path / "a.yaml", tmp_path / "b.yaml"
    first.write_text("workers: 2\n")
    second.write_text("workers: 5\n")
    monkeypatch.setenv("TWODIV_CONFIG", str(first))
    assert load_config(str(second)).workers == 5


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("TWODIV_WORKERS", "4")
    monkeypatch.setenv("TWODIV_LOG_LEVEL", "debug")
    config = load_config()
    assert config.workers == 4
    assert config.log_level == "DEBUG"


def test_empty_file_means_defaults(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("")
    assert load_config(str(path)).theorem.a_max == 4


@pytest.mark.parametrize(
    "text",
    [
        "theorem: [1, 2\n",
        "- just\n- a list\n",
        "theorem:\n  weights: [14]\n",
        "theorem:\n  m_list: [2]\n",
        "workers: 0\n",
    ],
)
def test_invalid_config(tmp_path, text):
    path = tmp_path / "bad.yaml"
    path.write_text(text)
    with pytest.raises(ConfigError):
        load_config(str(path))


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "nope.yaml"))


def test_bad_worker_variable(monkeypatch):
    monkeypatch.setenv("TWODIV_WORKERS", "many")
    with pytest.raises(ConfigError):
        load_config()


def test_dotenv_does_not_clobber(tmp_path, monkeypatch):
    env = tmp_path / ".env"
    env.write_text("TWODIV_WORKERS=6\nTWODIV_LOG_LEVEL=INFO\n")
    monkeypatch.setenv("TWODIV_LOG_LEVEL", "ERROR")
    load_environment(str(env))
    try:
        config = load_config()
    finally:
        os.environ.pop("TWODIV_WORKERS", None)
    assert config.workers == 6
    assert config.log_level == "ERROR"
