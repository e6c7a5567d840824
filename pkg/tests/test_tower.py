import pytest

from src.database import DatabaseManager, set_database
from src.hopf import trivial_module
from src.modrep import modules_isomorphic
from src.tower import OmegaTower, clear_towers, get_tower


@pytest.fixture
def cache_db(tmp_path):
    db = DatabaseManager(str(tmp_path / "towers.db"))
    assert db.connect()
    set_database(db)
    yield db
    set_database(None)


def test_sweedler_tower_is_periodic(h4):
    k = trivial_module(h4)
    tower = get_tower(k)
    assert tower.dims(-3, 3) == [(n, 1) for n in range(-3, 4)]
    assert modules_isomorphic(tower.module(2), k)
    assert modules_isomorphic(tower.module(-2), k)
    assert not modules_isomorphic(tower.module(1), k)


def test_towers_are_memoized(h4):
    k = trivial_module(h4)
    assert get_tower(k) is get_tower(trivial_module(h4))
    assert get_tower(k, "free") is not get_tower(k)
    clear_towers()
    assert get_tower(k).module(0) is k


def test_free_engine_tower(h4):
    tower = get_tower(trivial_module(h4), "free")
    assert tower.module(1).dim == 3


def test_step_needs_nonnegative_level(h4):
    with pytest.raises(ValueError):
        get_tower(trivial_module(h4)).step(-1)


def test_step_data_is_consistent(h4):
    tower = get_tower(trivial_module(h4))
    data = tower.step(0)
    assert data.module is tower.module(1)
    assert (data.cover.epi.matrix @ data.inclusion).is_zero()


def test_tower_levels_are_cached(h4, cache_db):
    k = trivial_module(h4)
    first = OmegaTower(k, "minimal", strip=True, seed=1, retries=4)
    assert first.module(2).dim == 1
    assert first.module(-1).dim == 1
    second = OmegaTower(k, "minimal", strip=True, seed=1, retries=4)
    assert second.module(2).dim == 1
    assert 2 in second._from_cache
    assert second._store.repo.levels(*second._store.fingerprints, "minimal") == [
        (-1, 1), (1, 1), (2, 1)]


def test_equal_modules_share_a_tower(h4):
    clear_towers()
    first = trivial_module(h4)
    second = trivial_module(h4)
    assert first is not second
    assert get_tower(first) is get_tower(second)


def test_tower_memo_is_bounded(h4, monkeypatch):
    from src.hopf import counit_kernel_module

    clear_towers()
    monkeypatch.setattr("src.tower.MAX_TOWERS", 1)
    k = trivial_module(h4)
    tower = get_tower(k)
    assert get_tower(k) is tower
    get_tower(counit_kernel_module(h4))
    assert get_tower(k) is not tower
    clear_towers()
