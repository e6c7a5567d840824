"""
JSON (de)serialization of algebras, Hopf algebras and modules.

Output is canonical: fixed key order, scalars in canonical string syntax,
two-space indentation and a trailing newline, so that parse → validate →
serialize reproduces bundled files byte for byte.
"""

import json
from pathlib import Path
from typing import Union

from pydantic import BaseModel, ValidationError

from app.models import AlgebraFile, ModuleFile
from app.utils import parse_scalars
from src.algcore import Algebra
from src.errors import ParseError, ShapeMismatch
from src.hopf import HopfAlgebra
from src.linalg import Matrix
from src.modrep import Module
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

AlgebraLike = Union[Algebra, HopfAlgebra]


def dumps_canonical(model: BaseModel) -> str:
    data = model.model_dump(mode="json", exclude_none=True)
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# Algebras
# ---------------------------------------------------------------------------

def algebra_to_file(obj: AlgebraLike) -> AlgebraFile:
    hopf = obj if isinstance(obj, HopfAlgebra) else None
    algebra = hopf.algebra if hopf else obj
    fmt = algebra.field.format
    data = {
        "name": hopf.name if hopf else algebra.name,
        "field": algebra.descriptor,
        "basis": algebra.labels,
        "unit": [fmt(c) for c in algebra.unit],
        "mult": [[(fmt(c), k) for k, c in entry] for entry in algebra.mult],
    }
    if hopf:
        data["coproduct"] = [[(fmt(c), j, k) for c, j, k in terms] for terms in hopf.coproduct]
        data["counit"] = [fmt(c) for c in hopf.counit]
        data["antipode"] = hopf.antipode.to_strings()
    return AlgebraFile(**data)


def algebra_from_file(spec: AlgebraFile) -> AlgebraLike:
    """
    Build an Algebra (or HopfAlgebra when coalgebra keys are present).

    Raises:
        ParseError: a scalar does not parse in the declared field
    """
    field = spec.field.field
    n = len(spec.basis)
    unit = parse_scalars(field, spec.unit, "unit")
    mult = []
    for idx, entry in enumerate(spec.mult):
        coeffs = parse_scalars(field, [c for c, _ in entry], f"mult[{idx}]")
        acc: dict = {}
        for (_, k), c in zip(entry, coeffs):
            acc[k] = field.add(acc.get(k, field.zero), c)
        mult.append(sorted((k, c) for k, c in acc.items() if c))
    try:
        algebra = Algebra(field, spec.basis, unit, mult, name=spec.name)
    except ShapeMismatch as e:
        raise ParseError(str(e)) from e
    if not spec.is_hopf:
        return algebra
    coproduct = []
    for idx, entry in enumerate(spec.coproduct):
        coeffs = parse_scalars(field, [c for c, _, _ in entry], f"coproduct[{idx}]")
        coproduct.append([(c, j, k) for (_, j, k), c in zip(entry, coeffs) if c])
    counit = parse_scalars(field, spec.counit, "counit")
    rows = [parse_scalars(field, row, f"antipode[{r}]") for r, row in enumerate(spec.antipode)]
    antipode = Matrix(field, n, n, rows)
    return HopfAlgebra(algebra, coproduct, counit, antipode, name=spec.name)


def parse_algebra_text(text: str) -> AlgebraLike:
    """
    Parse and build from JSON text.

    Raises:
        ParseError: malformed JSON, schema violations or bad scalars
    """
    try:
        spec = AlgebraFile.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(f"invalid algebra file: {e.errors()[0]['msg']}") from e
    return algebra_from_file(spec)


def load_algebra(path: Union[str, Path]) -> AlgebraLike:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    logger.debug(f"loading algebra from {path}")
    return parse_algebra_text(text)


def dumps_algebra(obj: AlgebraLike) -> str:
    return dumps_canonical(algebra_to_file(obj))


# ---------------------------------------------------------------------------
# Modules
# ---------------------------------------------------------------------------

def module_to_file(module: Module) -> ModuleFile:
    return ModuleFile(name=module.name, dim=module.dim, action=[m.to_strings() for m in module.action])


def module_from_file(algebra: Algebra, spec: ModuleFile) -> Module:
    """
    Raises:
        ParseError: wrong number of action matrices or bad scalars
    """
    if len(spec.action) != algebra.dim:
        raise ParseError(
            f"module has {len(spec.action)} action matrices, algebra has dimension {algebra.dim}")
    field = algebra.field
    action = []
    for i, mat in enumerate(spec.action):
        rows = [parse_scalars(field, row, f"action[{i}][{r}]") for r, row in enumerate(mat)]
        action.append(Matrix(field, spec.dim, spec.dim, rows))
    return Module(algebra, action, name=spec.name)


def dumps_module(module: Module) -> str:
    return dumps_canonical(module_to_file(module))


def loads_module(algebra: Algebra, text: str) -> Module:
    try:
        spec = ModuleFile.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(f"invalid module file: {e.errors()[0]['msg']}") from e
    return module_from_file(algebra, spec)


def load_module(algebra: Algebra, path: Union[str, Path]) -> Module:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    return loads_module(algebra, text)
