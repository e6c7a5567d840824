"""
Builders for the bundled Hopf algebras and calibration algebras.

Structure tables are expanded from relations: Taft algebras from the
normal form gᵃxᵇ with xg = ωgx, gᴺ = 1 and xᴺ = 0, the coproduct and
antipode from their values on g and x.
"""

from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Tuple, Union

from src.algcore import Algebra
from src.errors import BadCharacteristic
from src.exactfield import Field, FieldDescriptor, get_field, primitive_root_of_unity
from src.hopf import HopfAlgebra
from src.linalg import Matrix
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

FieldLike = Union[Field, FieldDescriptor]


def _field(value: FieldLike) -> Field:
    return get_field(value) if isinstance(value, FieldDescriptor) else value


def _power_label(symbol: str, k: int) -> str:
    if k == 0:
        return ""
    return symbol if k == 1 else f"{symbol}^{k}"


def taft_label(i: int, j: int) -> str:
    label = _power_label("g", i) + _power_label("x", j)
    return label or "1"


def _tensor_multiply(algebra: Algebra, u: Dict[Tuple[int, int], object],
                     v: Dict[Tuple[int, int], object]) -> Dict[Tuple[int, int], object]:
    """Product in A ⊗ A of sparse tensors {(j, k): coef}."""
    field = algebra.field
    n = algebra.dim
    out: Dict[Tuple[int, int], object] = {}
    for (a, b), c in u.items():
        for (p, q), d in v.items():
            cd = field.mul(c, d)
            for r, e in algebra.mult[a * n + p]:
                for s, f in algebra.mult[b * n + q]:
                    key = (r, s)
                    out[key] = field.add(out.get(key, field.zero), field.mul(cd, field.mul(e, f)))
    return {key: c for key, c in out.items() if c}


def _word_power(algebra: Algebra, element: list, k: int) -> list:
    acc = list(algebra.unit)
    for _ in range(k):
        acc = algebra.multiply(acc, element)
    return acc


def taft(n: int, field: FieldLike, name: str = "") -> HopfAlgebra:
    """
    Taft algebra T_N of dimension N² on the basis gⁱxʲ (index i + N·j).

    Args:
        n: N >= 2
        field: Field containing a primitive N-th root of unity

    Raises:
        BadCharacteristic: char(k) divides N
        NoPrimitiveRoot: no primitive N-th root of unity in the field
    """
    field = _field(field)
    p = field.characteristic
    if n < 2:
        raise ValueError("Taft algebras need N >= 2")
    if p and n % p == 0:
        raise BadCharacteristic(f"characteristic {p} divides N = {n}")
    omega = primitive_root_of_unity(field, n).value
    dim = n * n

    def index(i: int, j: int) -> int:
        return (i % n) + n * j

    labels = [taft_label(idx % n, idx // n) for idx in range(dim)]
    mult = []
    for left in range(dim):
        a, b = left % n, left // n
        for right in range(dim):
            c, d = right % n, right // n
            if b + d >= n:
                mult.append([])
            else:
                mult.append([(index(a + c, b + d), field.pow(omega, b * c))])
    unit = [field.one if k == 0 else field.zero for k in range(dim)]
    algebra = Algebra(field, labels, unit, mult, name=name or f"T{n}")

    one = field.one
    delta_g = {(index(1, 0), index(1, 0)): one}
    delta_x = {(0, index(0, 1)): one, (index(0, 1), index(1, 0)): one}
    coproduct = []
    for idx in range(dim):
        i, j = idx % n, idx // n
        acc = {(0, 0): one}
        for _ in range(i):
            acc = _tensor_multiply(algebra, acc, delta_g)
        for _ in range(j):
            acc = _tensor_multiply(algebra, acc, delta_x)
        coproduct.append(sorted(((c, jj, kk) for (jj, kk), c in acc.items()),
                                key=lambda t: (t[1], t[2])))
    counit = [field.one if idx // n == 0 else field.zero for idx in range(dim)]

    s_g = algebra.basis_vector(index(n - 1, 0))
    # S(x) = -x g⁻¹
    s_x = [field.neg(c) for c in algebra.multiply(algebra.basis_vector(index(0, 1)), s_g)]
    columns = []
    for idx in range(dim):
        i, j = idx % n, idx // n
        columns.append(algebra.multiply(_word_power(algebra, s_x, j), _word_power(algebra, s_g, i)))
    antipode = Matrix.from_columns(field, columns, dim)

    f = [field.zero] * dim
    f[index(1, n - 1)] = field.one
    algebra.frobenius_hint = f
    logger.debug(f"built Taft algebra T{n} over {field.descriptor.label()}")
    return HopfAlgebra(algebra, coproduct, counit, antipode, name=algebra.name)


def sweedler(field: FieldLike) -> HopfAlgebra:
    """
    Sweedler's 4-dimensional algebra H₄ on {1, g, x, gx}.

    Raises:
        BadCharacteristic: characteristic 2
    """
    field = _field(field)
    if field.characteristic == 2:
        raise BadCharacteristic("Sweedler's algebra needs characteristic != 2")
    hopf = taft(2, field, name="H4")
    return hopf


def cyclic_group_algebra(n: int, field: FieldLike, name: str = "") -> HopfAlgebra:
    """kZ_n with Δ(g) = g⊗g, ε(g) = 1, S(g) = g^{n-1}."""
    field = _field(field)
    labels = [_power_label("g", i) or "1" for i in range(n)]
    mult = [[((i + j) % n, field.one)] for i in range(n) for j in range(n)]
    unit = [field.one if i == 0 else field.zero for i in range(n)]
    algebra = Algebra(field, labels, unit, mult, name=name or f"kZ{n}")
    algebra.frobenius_hint = list(unit)
    coproduct = [[(field.one, i, i)] for i in range(n)]
    counit = [field.one] * n
    antipode = Matrix.from_columns(
        field, [[field.one if r == (-i) % n else field.zero for r in range(n)] for i in range(n)], n)
    return HopfAlgebra(algebra, coproduct, counit, antipode, name=algebra.name)


def dual_numbers(field: FieldLike, hopf: bool = False) -> Union[Algebra, HopfAlgebra]:
    """
    k[t]/(t²) on {1, t}.

    With hopf=True (characteristic 2 only) t = 1 + g identifies it with kZ_2:
    Δ(t) = 1⊗t + t⊗1 + t⊗t, ε(t) = 0, S(t) = t.

    Raises:
        BadCharacteristic: hopf=True outside characteristic 2
    """
    field = _field(field)
    one, zero = field.one, field.zero
    mult = [[(0, one)], [(1, one)], [(1, one)], []]
    algebra = Algebra(field, ["1", "t"], [one, zero], mult, name="k[t]/(t^2)")
    algebra.frobenius_hint = [zero, one]
    if not hopf:
        return algebra
    if field.characteristic != 2:
        raise BadCharacteristic("k[t]/(t²) is a Hopf algebra here only in characteristic 2")
    coproduct = [[(one, 0, 0)], [(one, 0, 1), (one, 1, 0), (one, 1, 1)]]
    return HopfAlgebra(algebra, coproduct, [one, zero], Matrix.identity(field, 2), name="F2[t]/(t^2)")


@dataclass
class ExampleSpec:
    """A named builtin algebra."""

    name: str
    description: str
    build: Callable[[], Union[Algebra, HopfAlgebra]]
    params: Dict[str, object] = dc_field(default_factory=dict)


Q = FieldDescriptor.rationals()

BUILTINS: Dict[str, ExampleSpec] = {
    spec.name: spec for spec in [
        ExampleSpec("sweedler", "Sweedler's H4 over Q", lambda: sweedler(Q), {"N": 2, "field": "Q"}),
        ExampleSpec("taft3", "Taft T3 over Q(ζ3)", lambda: taft(3, FieldDescriptor.cyclotomic(3)),
                    {"N": 3, "field": "Q(ζ3)"}),
        ExampleSpec("taft3_f7", "Taft T3 over F7 (ω = 2)", lambda: taft(3, FieldDescriptor.prime(7)),
                    {"N": 3, "field": "F7"}),
        ExampleSpec("kz3_q", "QZ3 (semisimple)", lambda: cyclic_group_algebra(3, Q, name="QZ3"),
                    {"n": 3, "field": "Q"}),
        ExampleSpec("kz3_cyclo", "Q(ζ3)Z3 (split semisimple)",
                    lambda: cyclic_group_algebra(3, FieldDescriptor.cyclotomic(3), name="Q(ζ3)Z3"),
                    {"n": 3, "field": "Q(ζ3)"}),
        ExampleSpec("kz2_q", "QZ2 (semisimple)", lambda: cyclic_group_algebra(2, Q, name="QZ2"),
                    {"n": 2, "field": "Q"}),
        ExampleSpec("kz2_f2", "F2Z2 ≅ F2[t]/(t²)",
                    lambda: cyclic_group_algebra(2, FieldDescriptor.prime(2), name="F2Z2"),
                    {"n": 2, "field": "F2"}),
        ExampleSpec("dual_f2", "F2[t]/(t²) with the Z2 Hopf structure",
                    lambda: dual_numbers(FieldDescriptor.prime(2), hopf=True), {"field": "F2"}),
    ]
}


def builtin_names() -> List[str]:
    return sorted(BUILTINS)


def build_example(name: str) -> Union[Algebra, HopfAlgebra]:
    """
    Build a builtin by name.

    Raises:
        KeyError: unknown name
    """
    if name not in BUILTINS:
        raise KeyError(f"unknown builtin '{name}'; choose from {', '.join(builtin_names())}")
    return BUILTINS[name].build()
