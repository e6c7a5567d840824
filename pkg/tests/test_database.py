from pathlib import Path

from app.models import TowerCacheRepository, TowerRecord
from src.database import CACHE_FILE, DatabaseManager, cache_url


def test_disabled_without_url():
    db = DatabaseManager("")
    assert not db.connect()
    assert db.health_check()["status"] == "disabled"


def test_cache_url(tmp_path):
    assert cache_url(None) == ""
    assert cache_url(tmp_path) == str(tmp_path / CACHE_FILE)


def test_plain_path_becomes_sqlite_url(tmp_path):
    db = DatabaseManager(str(tmp_path / "nested" / "cache.db"))
    assert db.database_url.startswith("sqlite:///")
    assert Path(tmp_path / "nested").is_dir()
    assert db.health_check()["status"] == "disconnected"
    assert db.connect()
    assert db.health_check()["status"] == "healthy"
    db.disconnect()
    assert not db.is_connected


def test_repository_put_get(tmp_path):
    db = DatabaseManager(str(tmp_path / "cache.db"))
    db.connect()
    repo = TowerCacheRepository(db)
    assert repo.get_level("a", "m", "minimal", 1) is None
    repo.put_level("a", "m", "minimal", 1, 1, "first")
    repo.put_level("a", "m", "minimal", 1, 1, "second")
    repo.put_level("a", "m", "minimal", -2, 3, "negative")
    repo.put_level("a", "m", "free", 1, 3, "free")
    assert repo.get_level("a", "m", "minimal", 1) == "second"
    assert repo.levels("a", "m", "minimal") == [(-2, 3), (1, 1)]
    assert repo.count() == 3
    assert all(isinstance(r, TowerRecord) for r in repo.get_all())
    db.disconnect()
    assert repo.get_level("a", "m", "minimal", 1) is None
