import pytest
import yaml

from src.config import Config


@pytest.fixture
def clean_env(monkeypatch):
    for name in ["TATECOH_ENGINE", "TATECOH_STRIP", "TATECOH_DEGREE_CAP", "TATECOH_SEED",
                 "TATECOH_RETRIES", "TATECOH_CACHE_DIR", "LOG_LEVEL"]:
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


def make_config(tmp_path, yaml_text=None, env_text=None):
    if yaml_text is not None:
        (tmp_path / "config.yaml").write_text(yaml_text)
    if env_text is not None:
        (tmp_path / ".env").write_text(env_text)
    return Config(config_file=str(tmp_path / "config.yaml"), env_file=str(tmp_path / ".env"))


def test_defaults(tmp_path, clean_env):
    cfg = make_config(tmp_path)
    assert cfg.get_engine() == "minimal"
    assert cfg.get_degree_cap() == 8
    assert cfg.get_retries() == 64
    assert cfg.strip_enabled()
    assert cfg.get_cache_dir() is None
    assert cfg.get_log_level() == "INFO"


def test_yaml_overrides_environment(tmp_path, clean_env):
    clean_env.setenv("TATECOH_DEGREE_CAP", "5")
    cfg = make_config(tmp_path, yaml_text="tate:\n  degree_cap: 12\n")
    assert cfg.get_degree_cap() == 12
    assert make_config(tmp_path, yaml_text="{}\n").get_degree_cap() == 5


def test_env_file(tmp_path, clean_env):
    cfg = make_config(tmp_path, env_text="TATECOH_ENGINE=free\nTATECOH_STRIP=off\n")
    assert cfg.get_engine() == "free"
    assert not cfg.strip_enabled()


def test_bad_values_fall_back(tmp_path, clean_env):
    clean_env.setenv("TATECOH_ENGINE", "quantum")
    clean_env.setenv("TATECOH_SEED", "abc")
    cfg = make_config(tmp_path)
    assert cfg.get_engine() == "minimal"
    assert cfg.get_seed() == 20240601


def test_set_and_persist(tmp_path, clean_env):
    cfg = make_config(tmp_path)
    cfg.set("search.seed", 7)
    assert cfg.get_seed() == 7
    assert not (tmp_path / "config.yaml").exists()
    cfg.set("cache.dir", str(tmp_path / "cache"), persist=True)
    saved = yaml.safe_load((tmp_path / "config.yaml").read_text())
    assert saved["cache"]["dir"] == str(tmp_path / "cache")
    assert cfg.get_cache_dir() == tmp_path / "cache"
