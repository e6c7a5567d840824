"""
File schemas and the tower cache record.

Scalars travel as strings in the field's own syntax ("-1/2", "3",
"1 - w^2"). Integers are accepted on input and stringified.
"""

from typing import Any, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from sqlalchemy import Column, DateTime, Integer, String, Text, UniqueConstraint
from sqlalchemy.sql import func

from src.database import Base, BaseRepository, DatabaseManager
from src.exactfield import FieldDescriptor
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def _stringify(value: Any) -> Any:
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)):
        if isinstance(value, float) and not value.is_integer():
            raise ValueError(f"non-integer float scalar {value}; write it as a fraction string")
        return str(int(value))
    return value


def _stringify_nested(value: Any) -> Any:
    if isinstance(value, list):
        return [_stringify_nested(v) for v in value]
    return _stringify(value)


class AlgebraFile(BaseModel):
    """
    Canonical JSON schema of an algebra, optionally with Hopf structure.

    mult has dim² entries; entry i·dim + j lists [coef, k] pairs of b_i·b_j.
    coproduct entry i lists [coef, j, k] triples of Δ(b_i).
    """

    model_config = ConfigDict(extra="forbid")

    name: str = "A"
    field: FieldDescriptor
    basis: List[str]
    unit: List[str]
    mult: List[List[Tuple[str, int]]]
    coproduct: Optional[List[List[Tuple[str, int, int]]]] = None
    counit: Optional[List[str]] = None
    antipode: Optional[List[List[str]]] = None

    @field_validator("unit", "counit", "antipode", mode="before")
    @classmethod
    def _scalars(cls, value: Any) -> Any:
        return _stringify_nested(value)

    @field_validator("mult", "coproduct", mode="before")
    @classmethod
    def _terms(cls, value: Any) -> Any:
        if value is None:
            return value
        return [[[_stringify(t[0])] + list(t[1:]) for t in entry] for entry in value]

    @model_validator(mode="after")
    def _check_shapes(self) -> "AlgebraFile":
        n = len(self.basis)
        if n == 0:
            raise ValueError("basis must not be empty")
        if len(self.unit) != n:
            raise ValueError(f"unit has {len(self.unit)} entries for {n} basis elements")
        if len(self.mult) != n * n:
            raise ValueError(f"mult has {len(self.mult)} entries, expected {n * n}")
        for entry in self.mult:
            for _, k in entry:
                if not 0 <= k < n:
                    raise ValueError(f"basis index {k} out of range")
        hopf_keys = [self.coproduct, self.counit, self.antipode]
        if any(v is not None for v in hopf_keys):
            if any(v is None for v in hopf_keys):
                raise ValueError("coproduct, counit and antipode must be given together")
            if len(self.coproduct) != n or len(self.counit) != n:
                raise ValueError("coproduct and counit need one entry per basis element")
            if len(self.antipode) != n or any(len(r) != n for r in self.antipode):
                raise ValueError(f"antipode must be {n}x{n}")
            for entry in self.coproduct:
                for _, j, k in entry:
                    if not (0 <= j < n and 0 <= k < n):
                        raise ValueError(f"coproduct index ({j}, {k}) out of range")
        return self

    @property
    def is_hopf(self) -> bool:
        return self.coproduct is not None


class ModuleFile(BaseModel):
    """{"dim": m, "action": [m×m matrix per algebra basis element]}."""

    model_config = ConfigDict(extra="forbid")

    name: str = "M"
    dim: int
    action: List[List[List[str]]]

    @field_validator("action", mode="before")
    @classmethod
    def _scalars(cls, value: Any) -> Any:
        return _stringify_nested(value)

    @model_validator(mode="after")
    def _check_shapes(self) -> "ModuleFile":
        if self.dim < 0:
            raise ValueError("dim must be nonnegative")
        for mat in self.action:
            if len(mat) != self.dim or any(len(r) != self.dim for r in mat):
                raise ValueError(f"action matrices must be {self.dim}x{self.dim}")
        return self


class TowerRecord(Base):
    """One level Ωⁿ(M) of a cached syzygy tower."""

    __tablename__ = 'tower_levels'
    __table_args__ = (
        UniqueConstraint('algebra_fingerprint', 'module_fingerprint', 'engine', 'degree',
                         name='uq_tower_level'),
    )

    id = Column(Integer, primary_key=True, index=True)
    created_at = Column(DateTime(timezone=True), server_default=func.now())
    updated_at = Column(DateTime(timezone=True), server_default=func.now(), onupdate=func.now())

    algebra_fingerprint = Column(String(32), index=True, nullable=False)
    module_fingerprint = Column(String(32), index=True, nullable=False)
    engine = Column(String(16), nullable=False)
    degree = Column(Integer, nullable=False)
    dim = Column(Integer, nullable=False)
    payload = Column(Text, nullable=False)


class TowerCacheRepository(BaseRepository[TowerRecord]):
    """Get and put serialized tower levels."""

    def __init__(self, db: DatabaseManager):
        super().__init__(db, TowerRecord)

    def _query(self, session, algebra_fp: str, module_fp: str, engine: str, degree: int):
        return session.query(TowerRecord).filter(
            TowerRecord.algebra_fingerprint == algebra_fp,
            TowerRecord.module_fingerprint == module_fp,
            TowerRecord.engine == engine,
            TowerRecord.degree == degree,
        )

    def get_level(self, algebra_fp: str, module_fp: str, engine: str, degree: int) -> Optional[str]:
        """Serialized module of a level, or None if it is not cached."""
        if not self.db.is_connected:
            return None
        with self.db.get_session() as session:
            record = self._query(session, algebra_fp, module_fp, engine, degree).first()
            return record.payload if record else None

    def put_level(self, algebra_fp: str, module_fp: str, engine: str, degree: int,
                  dim: int, payload: str) -> None:
        """Insert or replace a level."""
        if not self.db.is_connected:
            return
        with self.db.get_session() as session:
            record = self._query(session, algebra_fp, module_fp, engine, degree).first()
            if record:
                record.payload = payload
                record.dim = dim
            else:
                session.add(TowerRecord(algebra_fingerprint=algebra_fp, module_fingerprint=module_fp,
                                        engine=engine, degree=degree, dim=dim, payload=payload))
        logger.debug(f"cached level {degree} ({engine}) of module {module_fp[:8]}")

    def levels(self, algebra_fp: str, module_fp: str, engine: str) -> List[Tuple[int, int]]:
        """(degree, dim) of every cached level, sorted by degree."""
        if not self.db.is_connected:
            return []
        with self.db.get_session() as session:
            rows = session.query(TowerRecord.degree, TowerRecord.dim).filter(
                TowerRecord.algebra_fingerprint == algebra_fp,
                TowerRecord.module_fingerprint == module_fp,
                TowerRecord.engine == engine,
            ).order_by(TowerRecord.degree).all()
            return [(d, m) for d, m in rows]


class JobConfig(BaseModel):
    """One CLI invocation after flag parsing."""

    input: str
    command: str
    lo: int = -4
    hi: int = 4
    engine: Literal["minimal", "free", "both"] = "minimal"
    format: Literal["text", "json"] = "text"
    seed: Optional[int] = None
    cap: int = 8

    @model_validator(mode="after")
    def _check_range(self) -> "JobConfig":
        if self.lo > self.hi:
            raise ValueError(f"empty degree range: --from {self.lo} is above --to {self.hi}")
        if max(abs(self.lo), abs(self.hi)) > self.cap:
            raise ValueError(f"degree range [{self.lo}, {self.hi}] exceeds the cap {self.cap}")
        return self

    @property
    def engines(self) -> List[str]:
        return ["minimal", "free"] if self.engine == "both" else [self.engine]
