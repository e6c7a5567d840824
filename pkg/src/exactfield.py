"""
Exact scalar arithmetic over the supported coefficient fields.

Three kinds of field are supported:
- Rationals: payloads are fractions.Fraction in lowest terms
- PrimeField(p): payloads are residues in [0, p)
- Cyclotomic(N): payloads are polynomials in w of degree < φ(N) with rational
  coefficients, reduced modulo the N-th cyclotomic polynomial

Heavy code (linear algebra, module towers) works on raw payloads through the
Field object for speed. FieldElement wraps a payload for the public API.
Every payload has a unique canonical form and zero is always falsy.
"""

import operator
import re
from fractions import Fraction
from functools import lru_cache
from typing import Any, List, Literal, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, model_validator

from src.errors import DivisionByZero, MixedFields, NoPrimitiveRoot, ParseError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

# Exhaustive root search in prime fields stops here
PRIME_ROOT_SEARCH_LIMIT = 200_000


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def divisors(n: int) -> List[int]:
    """Positive divisors of n in increasing order."""
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    """Euler totient of n."""
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def prime_factors(n: int) -> List[int]:
    """Distinct prime factors of n."""
    factors, p = [], 2
    while p * p <= n:
        if n % p == 0:
            factors.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        factors.append(n)
    return factors


# ---------------------------------------------------------------------------
# Rational polynomial helpers (coefficient lists, lowest degree first)
# ---------------------------------------------------------------------------

def _trim(coeffs: List) -> List:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _poly_sub(a: Sequence, b: Sequence) -> List:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


def _poly_mul(a: Sequence, b: Sequence) -> List:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] += ai * bj
    return _trim(out)


def _poly_divmod(a: Sequence, b: Sequence) -> Tuple[List, List]:
    """Quotient and remainder of a by a nonzero polynomial b over ℚ."""
    rem = [Fraction(c) for c in a]
    _trim(rem)
    b = [Fraction(c) for c in b]
    _trim(b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(rem) < len(b):
        return [], rem
    quot = [Fraction(0)] * (len(rem) - len(b) + 1)
    lead = b[-1]
    while len(rem) >= len(b) and rem:
        shift = len(rem) - len(b)
        c = rem[-1] / lead
        quot[shift] = c
        for i, bi in enumerate(b):
            rem[shift + i] -= c * bi
        _trim(rem)
    return _trim(quot), rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """
    Return the n-th cyclotomic polynomial Φ_n as integer coefficients.

    Φ_n is x^n - 1 divided by the product of Φ_d over the proper divisors d of n.

    Args:
        n: Order, n >= 1

    Returns:
        Coefficients, lowest degree first (Φ_6 = x^2 - x + 1 -> (1, -1, 1))
    """
    if n < 1:
        raise ValueError(f"cyclotomic polynomial needs n >= 1, got {n}")
    numerator: List = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n):
        if d == n:
            continue
        numerator, rem = _poly_divmod(numerator, cyclotomic_polynomial(d))
        assert not rem, "cyclotomic division left a remainder"
    return tuple(int(c) for c in numerator)


# ---------------------------------------------------------------------------
# Field descriptor
# ---------------------------------------------------------------------------

class FieldDescriptor(BaseModel):
    """Names one coefficient field: Rationals, PrimeField(p) or Cyclotomic(n)."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["rationals", "prime", "cyclotomic"]
    p: Optional[int] = None
    n: Optional[int] = None

    @model_validator(mode="after")
    def _check_parameters(self) -> "FieldDescriptor":
        if self.kind == "prime":
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"PrimeField needs a prime p, got {self.p}")
        elif self.kind == "cyclotomic":
            if self.n is None or self.n < 1:
                raise ValueError(f"Cyclotomic needs n >= 1, got {self.n}")
        return self

    @classmethod
    def rationals(cls) -> "FieldDescriptor":
        return cls(kind="rationals")

    @classmethod
    def prime(cls, p: int) -> "FieldDescriptor":
        return cls(kind="prime", p=p)

    @classmethod
    def cyclotomic(cls, n: int) -> "FieldDescriptor":
        return cls(kind="cyclotomic", n=n)

    @property
    def field(self) -> "Field":
        return get_field(self)

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "prime" else 0

    def label(self) -> str:
        if self.kind == "rationals":
            return "Q"
        if self.kind == "prime":
            return f"F_{self.p}"
        return f"Q(zeta_{self.n})"


# ---------------------------------------------------------------------------
# Fields operating on raw payloads
# ---------------------------------------------------------------------------

class Field:
    """Arithmetic on canonical payloads of one field."""

    descriptor: FieldDescriptor
    characteristic: int = 0
    zero: Any
    one: Any

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def from_int(self, k: int):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return not a

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        result, base = self.one, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def coerce(self, value):
        """Turn ints, Fractions, strings or FieldElements into a payload."""
        if isinstance(value, FieldElement):
            if value.field.descriptor != self.descriptor:
                raise MixedFields(f"{value.field.descriptor.label()} vs {self.descriptor.label()}")
            return value.value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            return self.from_int(int(value))
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self.div(self.from_int(value.numerator), self.from_int(value.denominator))
        return value

    def element(self, value) -> "FieldElement":
        return FieldElement(self, self.coerce(value))

    def random(self, rng, bound: int = 3):
        """Small random payload for seeded searches."""
        return self.from_int(rng.randint(-bound, bound))

    def addmul_row(self, dst: list, src: Sequence, c, start: int = 0) -> None:
        """dst[k] += c * src[k] for k >= start, in place."""
        add, mul = self.add, self.mul
        for k in range(start, len(src)):
            s = src[k]
            if s:
                dst[k] = add(dst[k], mul(c, s))

    def scale_row(self, row: list, c, start: int = 0) -> None:
        mul = self.mul
        for k in range(start, len(row)):
            if row[k]:
                row[k] = mul(c, row[k])

    def candidate_roots(self, poly: Sequence) -> List:
        """Values worth testing as roots of poly; subclasses know their field."""
        return [self.zero, self.one, self.neg(self.one)]

    def __repr__(self) -> str:
        return f"<Field {self.descriptor.label()}>"


class RationalField(Field):
    """ℚ with fractions.Fraction payloads."""

    def __init__(self, descriptor: FieldDescriptor):
        self.descriptor = descriptor
        self.characteristic = 0
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.add = operator.add
        self.sub = operator.sub
        self.mul = operator.mul
        self.neg = operator.neg

    def inv(self, a):
        if not a:
            raise DivisionByZero("division by zero in Q")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise DivisionByZero("division by zero in Q")
        return a / b

    def from_int(self, k: int):
        return Fraction(k)

    def parse(self, text: str):
        try:
            return Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"invalid rational scalar '{text}': {e}")

    def format(self, a) -> str:
        return str(a)

    def addmul_row(self, dst: list, src: Sequence, c, start: int = 0) -> None:
        for k in range(start, len(src)):
            s = src[k]
            if s:
                dst[k] += c * s

    def candidate_roots(self, poly: Sequence) -> List:
        # Rational root theorem on the integer-scaled polynomial
        coeffs = list(poly)
        roots = []
        while coeffs and not coeffs[0]:
            coeffs.pop(0)
            if Fraction(0) not in roots:
                roots.append(Fraction(0))
        if len(coeffs) < 2:
            return roots
        denom = 1
        for c in coeffs:
            denom = denom * c.denominator // _gcd(denom, c.denominator)
        ints = [int(c * denom) for c in coeffs]
        for num in divisors(ints[0]):
            for den in divisors(ints[-1]):
                for sign in (1, -1):
                    roots.append(Fraction(sign * num, den))
        return roots


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


class PrimeField(Field):
    """𝔽_p with integer residues in [0, p)."""

    def __init__(self, descriptor: FieldDescriptor):
        self.descriptor = descriptor
        self.p = descriptor.p
        self.characteristic = self.p
        self.zero = 0
        self.one = 1 % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if not a:
            raise DivisionByZero(f"division by zero in F_{self.p}")
        return pow(a, -1, self.p)

    def from_int(self, k: int):
        return k % self.p

    def parse(self, text: str):
        try:
            return int(str(text).strip()) % self.p
        except ValueError as e:
            raise ParseError(f"invalid residue '{text}' for F_{self.p}: {e}")

    def format(self, a) -> str:
        return str(a)

    def random(self, rng, bound: int = 3):
        return rng.randrange(self.p)

    def addmul_row(self, dst: list, src: Sequence, c, start: int = 0) -> None:
        p = self.p
        for k in range(start, len(src)):
            s = src[k]
            if s:
                dst[k] = (dst[k] + c * s) % p

    def scale_row(self, row: list, c, start: int = 0) -> None:
        p = self.p
        for k in range(start, len(row)):
            if row[k]:
                row[k] = (c * row[k]) % p

    def candidate_roots(self, poly: Sequence) -> List:
        if self.p > PRIME_ROOT_SEARCH_LIMIT:
            return super().candidate_roots(poly)
        return list(range(self.p))


class CyclotomicField(Field):
    """
    ℚ(ζ_N) as ℚ[w]/(Φ_N).

    Payloads are tuples of Fractions (coefficient of w^i at index i) with
    trailing zeros removed, so zero is the empty tuple.
    """

    def __init__(self, descriptor: FieldDescriptor):
        self.descriptor = descriptor
        self.n = descriptor.n
        self.characteristic = 0
        self.modulus = cyclotomic_polynomial(self.n)
        self.degree = len(self.modulus) - 1
        self.zero = ()
        self.one = (Fraction(1),)
        # Reduced forms of w^e for e >= degree, filled on demand
        self._top = tuple(Fraction(-c) for c in self.modulus[:-1])
        self._reductions = {self.degree: self._top}
        self._reduction(max(self.degree, 2 * self.degree - 2))

    def _reduction(self, e: int) -> tuple:
        last = max(self._reductions)
        while last < e:
            prev = self._reductions[last]
            carry = prev[-1]
            current = [Fraction(0)] + list(prev[:-1])
            if carry:
                current = [current[i] + carry * self._top[i] for i in range(self.degree)]
            last += 1
            self._reductions[last] = tuple(current)
        return self._reductions[e]

    @staticmethod
    def _canon(coeffs: List) -> tuple:
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        return tuple(coeffs)

    def _reduce(self, coeffs: List) -> tuple:
        d = self.degree
        if len(coeffs) <= d:
            return self._canon(list(coeffs))
        low = list(coeffs[:d]) + [Fraction(0)] * max(0, d - len(coeffs))
        for e in range(d, len(coeffs)):
            c = coeffs[e]
            if c:
                red = self._reduction(e)
                for i in range(d):
                    if red[i]:
                        low[i] += c * red[i]
        return self._canon(low)

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return self._canon(out)

    def sub(self, a, b):
        n = max(len(a), len(b))
        out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
        return self._canon([Fraction(c) for c in out])

    def neg(self, a):
        return tuple(-c for c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        if len(a) == 1:
            return self._canon([a[0] * c for c in b])
        if len(b) == 1:
            return self._canon([b[0] * c for c in a])
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return self._reduce(out)

    def inv(self, a):
        """Inverse via the extended Euclidean algorithm against Φ_N."""
        if not a:
            raise DivisionByZero(f"division by zero in Q(zeta_{self.n})")
        if len(a) == 1:
            return (1 / a[0],)
        r0, r1 = [Fraction(c) for c in self.modulus], list(a)
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 is a nonzero constant because Φ_N is irreducible
        g = r0[0]
        return self._reduce([c / g for c in s0])

    def from_int(self, k: int):
        return (Fraction(k),) if k else ()

    def generator(self):
        return self._reduce([Fraction(0), Fraction(1)])

    def parse(self, text: str):
        s = str(text).replace(" ", "")
        if not s:
            raise ParseError("empty cyclotomic scalar")
        terms = re.findall(r"[+-]?[^+-]+", s)
        if "".join(terms) != s:
            raise ParseError(f"invalid cyclotomic scalar '{text}'")
        total = self.zero
        w = self.generator()
        for term in terms:
            try:
                if "w" in term:
                    coef_part, _, rest = term.partition("w")
                    coef_part = coef_part.rstrip("*")
                    exponent = 1
                    divisor = Fraction(1)
                    if rest.startswith("^"):
                        exp_text, _, tail = rest[1:].partition("/")
                        exponent = int(exp_text)
                        if tail:
                            divisor = Fraction(tail)
                    elif rest.startswith("/"):
                        divisor = Fraction(rest[1:])
                    elif rest:
                        raise ValueError(f"unexpected '{rest}'")
                    if coef_part in ("", "+"):
                        coef = Fraction(1)
                    elif coef_part == "-":
                        coef = Fraction(-1)
                    else:
                        coef = Fraction(coef_part)
                    value = self.mul((coef / divisor,), self.pow(w, exponent))
                else:
                    value = self.from_int(0) if Fraction(term) == 0 else (Fraction(term),)
            except (ValueError, ZeroDivisionError) as e:
                raise ParseError(f"invalid cyclotomic term '{term}' in '{text}': {e}")
            total = self.add(total, value)
        return total

    def format(self, a) -> str:
        if not a:
            return "0"
        pieces = []
        for i, c in enumerate(a):
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = "w" if i == 1 else f"w^{i}"
                body = power if mag == 1 else f"{mag}*{power}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def random(self, rng, bound: int = 3):
        return self._canon([Fraction(rng.randint(-bound, bound)) for _ in range(self.degree)])

    def candidate_roots(self, poly: Sequence) -> List:
        w = self.generator()
        roots = [self.zero]
        power = self.one
        for _ in range(2 * self.n):
            roots.append(power)
            roots.append(self.neg(power))
            power = self.mul(power, w)
        if all(len(c) <= 1 for c in poly):
            rationals = RationalField(FieldDescriptor.rationals())
            for r in rationals.candidate_roots([c[0] if c else Fraction(0) for c in poly]):
                roots.append(self.from_int(0) if not r else (r,))
        return roots


@lru_cache(maxsize=None)
def get_field(descriptor: FieldDescriptor) -> Field:
    """Return the (shared) Field object for a descriptor."""
    if descriptor.kind == "rationals":
        return RationalField(descriptor)
    if descriptor.kind == "prime":
        return PrimeField(descriptor)
    return CyclotomicField(descriptor)


# ---------------------------------------------------------------------------
# Public scalar type
# ---------------------------------------------------------------------------

class FieldElement:
    """An immutable exact scalar tagged with its field."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, key, value):
        raise AttributeError("FieldElement is immutable")

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field.descriptor != self.field.descriptor:
                raise MixedFields(
                    f"cannot combine {self.field.descriptor.label()} with {other.field.descriptor.label()}"
                )
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, k))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return not self.value

    def __bool__(self) -> bool:
        return bool(self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return other.field.descriptor == self.field.descriptor and other.value == self.value
        if isinstance(other, (int, Fraction, str)):
            try:
                return self.value == self.field.coerce(other)
            except (ParseError, DivisionByZero):
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.descriptor, self.value))

    def __str__(self) -> str:
        return self.field.format(self.value)

    def __repr__(self) -> str:
        return f"FieldElement({self.field.descriptor.label()}, {self.field.format(self.value)})"


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """
    Apply one of add, sub, mul, div to two scalars of the same field.

    Raises:
        MixedFields: descriptors differ
        DivisionByZero: div by zero
    """
    if a.field.descriptor != b.field.descriptor:
        raise MixedFields(f"{a.field.descriptor.label()} vs {b.field.descriptor.label()}")
    ops = {"add": operator.add, "sub": operator.sub, "mul": operator.mul, "div": operator.truediv}
    if op not in ops:
        raise ValueError(f"unknown operation '{op}'")
    return ops[op](a, b)


def _element_order_is(field: Field, value, n: int) -> bool:
    if field.pow(value, n) != field.one:
        return False
    return all(field.pow(value, n // q) != field.one for q in prime_factors(n))


def primitive_root_of_unity(
    field: Union[Field, FieldDescriptor], n: int
) -> FieldElement:
    """
    Return a primitive n-th root of unity ω of the field.

    Args:
        field: Field or descriptor
        n: Order, n >= 1

    Raises:
        NoPrimitiveRoot: the field does not contain one
    """
    if isinstance(field, FieldDescriptor):
        field = get_field(field)
    if n < 1:
        raise NoPrimitiveRoot(f"order must be >= 1, got {n}")
    d = field.descriptor
    if n == 1:
        return field.element(1)
    if d.kind == "rationals":
        if n == 2:
            return field.element(-1)
        raise NoPrimitiveRoot(f"Q contains primitive {n}-th roots only for n <= 2")
    if d.kind == "prime":
        if (d.p - 1) % n != 0:
            raise NoPrimitiveRoot(f"F_{d.p} has a primitive {n}-th root only if {n} divides {d.p - 1}")
        for candidate in range(2, d.p):
            if _element_order_is(field, candidate, n):
                return field.element(candidate)
        raise NoPrimitiveRoot(f"no primitive {n}-th root found in F_{d.p}")
    # Cyclotomic
    w = field.generator()
    m = d.n
    if m % n == 0:
        return FieldElement(field, field.pow(w, m // n))
    if n == 2:
        return field.element(-1)
    if m % 2 == 1 and n % 2 == 0 and m % (n // 2) == 0:
        # -w^(m/(n/2)) has order n when m is odd
        candidate = field.neg(field.pow(w, m // (n // 2)))
        if _element_order_is(field, candidate, n):
            return FieldElement(field, candidate)
    raise NoPrimitiveRoot(f"Q(zeta_{m}) has no primitive {n}-th root of unity")


def poly_eval(field: Field, poly: Sequence, x):
    """Horner evaluation of a payload polynomial (lowest degree first)."""
    acc = field.zero
    for c in reversed(poly):
        acc = field.add(field.mul(acc, x), c)
    return acc


def split_roots(field: Field, poly: Sequence) -> Optional[List]:
    """
    Distinct roots of a polynomial that splits into distinct linear factors.

    Args:
        field: Coefficient field
        poly: Payload coefficients, lowest degree first, nonzero leading term

    Returns:
        The roots, or None if the polynomial could not be split over the field
    """
    coeffs = list(poly)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    degree = len(coeffs) - 1
    if degree <= 0:
        return []
    roots = []
    remaining = coeffs
    for candidate in field.candidate_roots(coeffs):
        if candidate in roots:
            continue
        if not poly_eval(field, remaining, candidate):
            roots.append(candidate)
            # synthetic division by (t - candidate)
            quotient = [field.zero] * (len(remaining) - 1)
            carry = field.zero
            for i in range(len(remaining) - 1, 0, -1):
                carry = field.add(field.mul(carry, candidate), remaining[i])
                quotient[i - 1] = carry
            remaining = quotient
            if len(remaining) == 1:
                break
    if len(roots) != degree:
        logger.debug(f"polynomial of degree {degree} split only into {len(roots)} roots")
        return None
    return roots
