"""
Ω-towers: the syzygies Ωⁿ(M) of one module in every integer degree.

Positive levels come from repeated covers (the syzygy data is kept so maps
can be lifted), negative levels from repeated cosyzygies. Towers are
memoized per (algebra, module, engine) in a process-wide table guarded by a
lock, and optionally persisted in the SQLite tower cache.
"""

import threading
from collections import OrderedDict
from typing import Dict, List, Optional, Tuple

from src.algcore import Algebra
from src.config import config
from src.modrep import DEFAULT_RETRIES, DEFAULT_SEED, Engine, Module, Syzygy, cosyzygy, syzygy_data
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def _same_module(a: Module, b: Module) -> bool:
    return a.dim == b.dim and all(x == y for x, y in zip(a.action, b.action))


class _PersistentLevels:
    """Adapter between a tower and the tower cache repository, resolved on every access."""

    def __init__(self, algebra: Algebra, module: Module, engine: str):
        self.algebra = algebra
        self.module = module
        self.engine = engine
        self._fps: Optional[Tuple[str, str]] = None

    @property
    def repo(self):
        from app.models import TowerCacheRepository
        from src.database import get_database

        db = get_database()
        return TowerCacheRepository(db) if db else None

    @property
    def fingerprints(self) -> Tuple[str, str]:
        if self._fps is None:
            from app.serialization import algebra_to_file, module_to_file
            from app.utils import fingerprint

            self._fps = (fingerprint(algebra_to_file(self.algebra)), fingerprint(module_to_file(self.module)))
        return self._fps

    @property
    def enabled(self) -> bool:
        return self.repo is not None

    def get(self, degree: int) -> Optional[Module]:
        repo = self.repo
        if not repo:
            return None
        from app.serialization import loads_module

        payload = repo.get_level(*self.fingerprints, self.engine, degree)
        if payload is None:
            return None
        logger.debug(f"tower level {degree} loaded from cache")
        return loads_module(self.algebra, payload)

    def put(self, degree: int, module: Module) -> None:
        repo = self.repo
        if not repo:
            return
        from app.serialization import dumps_module

        repo.put_level(*self.fingerprints, self.engine, degree, module.dim, dumps_module(module))


class OmegaTower:
    """
    Lazily computed Ωⁿ(M) for n ∈ ℤ.

    Attributes:
        algebra: The algebra M lives over
        base: The module M = Ω⁰(M)
        engine: "minimal" or "free"
    """

    def __init__(self, module: Module, engine: Engine = "minimal", strip: Optional[bool] = None,
                 seed: Optional[int] = None, retries: Optional[int] = None, persist: bool = True):
        self.algebra = module.algebra
        self.base = module
        self.engine = engine
        self.strip = config.strip_enabled() if strip is None else strip
        self.seed = config.get_seed() if seed is None else seed
        self.retries = config.get_retries() if retries is None else retries
        self._modules: Dict[int, Module] = {0: module}
        self._steps: Dict[int, Syzygy] = {}
        self._from_cache: set = set()
        self._lock = threading.RLock()
        self._store = _PersistentLevels(self.algebra, module, self._engine_key()) if persist else None

    def _engine_key(self) -> str:
        return self.engine if self.engine == "minimal" or self.strip else f"{self.engine}-nostrip"

    def _load(self, n: int) -> Optional[Module]:
        if self._store is None or not self._store.enabled:
            return None
        try:
            module = self._store.get(n)
        except Exception as e:
            logger.warning(f"tower cache read failed at level {n}: {e}")
            return None
        if module is not None:
            self._from_cache.add(n)
        return module

    def _save(self, n: int, module: Module) -> None:
        if self._store is None or not self._store.enabled:
            return
        try:
            self._store.put(n, module)
        except Exception as e:
            logger.warning(f"tower cache write failed at level {n}: {e}")

    def _drop_beyond(self, n: int) -> None:
        """Forget levels further from 0 than n (same sign)."""
        for k in list(self._modules):
            if (n > 0 and k > n) or (n < 0 and k < n):
                del self._modules[k]
        for k in list(self._steps):
            if n > 0 and k >= n:
                del self._steps[k]

    def module(self, n: int) -> Module:
        """Ωⁿ(M); for n < 0 this is (Ω⁻¹)^{|n|}(M)."""
        with self._lock:
            if n in self._modules:
                return self._modules[n]
            cached = self._load(n)
            if cached is not None:
                self._modules[n] = cached
                return cached
            if n > 0:
                return self.step(n - 1).module
            prev = self.module(n + 1)
            result = cosyzygy(prev, self.engine, self.strip)
            result.name = f"Ω^{n}({self.base.name})"
            logger.info(f"tower {self.base.name}/{self.engine}: level {n} has dimension {result.dim}")
            self._modules[n] = result
            self._save(n, result)
            return result

    def step(self, n: int) -> Syzygy:
        """Syzygy data covering Ωⁿ(M) with kernel Ωⁿ⁺¹(M), n >= 0."""
        if n < 0:
            raise ValueError("syzygy data exists only for levels n >= 0")
        with self._lock:
            if n in self._steps:
                return self._steps[n]
            data = syzygy_data(self.module(n), self.engine, self.strip, self.seed, self.retries)
            data.module.name = f"Ω^{n + 1}({self.base.name})"
            known = self._modules.get(n + 1)
            if known is not None and not _same_module(known, data.module):
                logger.warning(f"cached level {n + 1} of {self.base.name} disagrees with the recomputed one; "
                               "replacing it")
                self._drop_beyond(n + 1)
                self._save(n + 1, data.module)
            elif known is None:
                self._save(n + 1, data.module)
            self._modules[n + 1] = data.module
            self._steps[n] = data
            logger.info(f"tower {self.base.name}/{self.engine}: level {n + 1} has dimension "
                        f"{data.module.dim}")
            return data

    def dims(self, lo: int, hi: int) -> List[Tuple[int, int]]:
        return [(n, self.module(n).dim) for n in range(lo, hi + 1)]


MAX_TOWERS = 256

_towers: "OrderedDict[Tuple, Tuple[Algebra, OmegaTower]]" = OrderedDict()
_towers_lock = threading.Lock()


def _action_key(module: Module) -> str:
    from app.utils import create_hash

    return create_hash(repr([m.to_strings() for m in module.action]))


def get_tower(module: Module, engine: Engine = "minimal", strip: Optional[bool] = None,
              seed: Optional[int] = None, retries: Optional[int] = None) -> OmegaTower:
    """
    The memoized tower of a module, matched by algebra identity and action matrices.

    The memo keeps the MAX_TOWERS most recently used towers.
    """
    strip = config.strip_enabled() if strip is None else strip
    seed = config.get_seed() if seed is None else seed
    retries = config.get_retries() if retries is None else retries
    key = (id(module.algebra), module.dim, _action_key(module), engine, strip, seed, retries)
    with _towers_lock:
        hit = _towers.get(key)
        if hit is not None and hit[0] is module.algebra:
            _towers.move_to_end(key)
            return hit[1]
        tower = OmegaTower(module, engine, strip, seed, retries)
        _towers[key] = (module.algebra, tower)
        while len(_towers) > MAX_TOWERS:
            _towers.popitem(last=False)
        return tower


def clear_towers() -> None:
    with _towers_lock:
        _towers.clear()


__all__ = ["OmegaTower", "get_tower", "clear_towers", "DEFAULT_SEED", "DEFAULT_RETRIES"]
