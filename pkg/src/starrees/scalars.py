"""Exact coefficient fields: the rationals and prime fields GF(p).

Field elements are stored raw for speed: ``fractions.Fraction`` over QQ and
plain ``int`` residues in ``[0, p)`` over GF(p).  The :class:`Field` object
carries the arithmetic, so polynomials and matrices only hold a reference to
their field.
"""

from __future__ import annotations

import re
import warnings
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, int]

#: Fields below this size get a warning: accidental vanishing of minors
#: becomes plausible for the coefficient-explicit formulas.
SMALL_PRIME_WARNING = 50

DEFAULT_PRIME = 101


class FieldError(ArithmeticError):
    """Incompatible field operands or malformed scalar text."""


class NotInvertibleError(ZeroDivisionError):
    """Raised when inverting zero."""


def rational_normalize(num: int, den: int) -> Fraction:
    """Canonical reduced rational with a positive denominator."""
    if den == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return Fraction(num, den)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """Base class; concrete fields are :class:`RationalField` and :class:`PrimeField`."""

    characteristic: int = 0

    def __call__(self, value) -> Scalar:
        return self.convert(value)

    def convert(self, value) -> Scalar:
        raise NotImplementedError

    zero: Scalar
    one: Scalar

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def neg(self, a: Scalar) -> Scalar:
        raise NotImplementedError

    def inv(self, a: Scalar) -> Scalar:
        raise NotImplementedError

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def parse(self, text: str) -> Scalar:
        raise NotImplementedError

    def to_str(self, a: Scalar) -> str:
        raise NotImplementedError

    def coeff_str(self, a: Scalar) -> str:
        """Text for ``a`` inside a polynomial (signed, no modulus suffix)."""
        return self.to_str(a)

    def is_negative(self, a: Scalar) -> bool:
        return False


class RationalField(Field):
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def convert(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, float):
            raise FieldError("floating point values are not exact scalars")
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise NotInvertibleError("zero is not invertible")
        return 1 / Fraction(a)

    def parse(self, text: str) -> Fraction:
        m = re.fullmatch(r"\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*", text)
        if m is None:
            raise FieldError(f"malformed rational {text!r}")
        den = int(m.group(2)) if m.group(2) else 1
        return rational_normalize(int(m.group(1)), den)

    def to_str(self, a) -> str:
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def is_negative(self, a) -> bool:
        return a < 0

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p >= 2**31:
            raise FieldError("prime fields are limited to p < 2^31")
        if p < SMALL_PRIME_WARNING:
            warnings.warn(
                f"GF({p}) is small: closed-form minors may vanish accidentally",
                stacklevel=2,
            )
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def convert(self, value) -> int:
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldError(f"denominator of {value} vanishes mod {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        if isinstance(value, float):
            raise FieldError("floating point values are not exact scalars")
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise NotInvertibleError(f"zero is not invertible in GF({self.p})")
        return pow(a, -1, self.p)

    def parse(self, text: str) -> int:
        m = re.fullmatch(r"\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*(?:mod\s*(\d+))?\s*", text)
        if m is None:
            raise FieldError(f"malformed GF({self.p}) element {text!r}")
        if m.group(3) and int(m.group(3)) != self.p:
            raise FieldError(f"modulus {m.group(3)} does not match GF({self.p})")
        den = int(m.group(2)) if m.group(2) else 1
        return self.convert(rational_normalize(int(m.group(1)), den))

    def to_str(self, a) -> str:
        return f"{a % self.p} mod {self.p}"

    def coeff_str(self, a) -> str:
        # symmetric representative reads better inside polynomials
        a %= self.p
        return str(a - self.p) if a > self.p // 2 else str(a)

    def is_negative(self, a) -> bool:
        return a % self.p > self.p // 2

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """Cached prime field constructor (warns once per small prime)."""
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def field_inverse(a: Scalar, field: Field) -> Scalar:
    return field.inv(a)


def parse_field(text: str) -> Field:
    """Parse a field descriptor: ``Q``/``QQ`` or ``Fp:101``/``GF(101)``."""
    t = text.strip()
    if t.upper() in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(?:Fp:|GF\(|F)(\d+)\)?", t, flags=re.IGNORECASE)
    if m is None:
        raise FieldError(f"unknown field descriptor {text!r}")
    return GF(int(m.group(1)))


def field_descriptor(field: Field) -> str:
    return "Q" if field.characteristic == 0 else f"Fp:{field.characteristic}"
