"""Coefficient fields: exact rationals and prime residue fields.

Elements are plain Python values (``Fraction`` for the rationals, ``int``
in ``[0, p)`` for a prime field) so that elimination loops stay cheap.
The field object carries the arithmetic.
"""

from __future__ import annotations

import warnings
from fractions import Fraction

DEFAULT_PRIME = 32003


class FieldMismatchError(ValueError):
    """Raised when operands from two different fields are combined."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """Base class; subclasses implement the arithmetic on raw values."""

    name: str = "?"
    characteristic: int = 0

    def __eq__(self, other):
        return type(self) is type(other) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r})"

    def check_same(self, other: "Field") -> None:
        if self != other:
            raise FieldMismatchError(f"cannot mix {self.name} with {other.name}")


class Rationals(Field):
    name = "q"
    characteristic = 0

    def __call__(self, value) -> Fraction:
        return Fraction(value)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

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
            raise ZeroDivisionError("zero has no inverse")
        return 1 / Fraction(a)


class PrimeField(Field):
    """Integers modulo a prime ``p``; residues are kept in ``[0, p)``."""

    def __init__(self, p: int = DEFAULT_PRIME):
        p = int(p)
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p == 2:
            warnings.warn(
                "working over F_2: signs are invisible, so sign-convention "
                "errors in the construction cannot be detected",
                stacklevel=2,
            )
        self.p = p
        self.characteristic = p
        self.name = f"fp:{p}"

    def __call__(self, value) -> int:
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.p)


QQ = Rationals()


def parse_field(text: str) -> Field:
    """Parse ``"q"`` or ``"fp:<prime>"`` into a field object."""
    text = text.strip().lower()
    if text in ("q", "qq", "rational", "rationals"):
        return QQ
    if text.startswith("fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise ValueError(f"bad prime in field spec {text!r}") from None
        return PrimeField(p)
    raise ValueError(f"unknown field {text!r}; expected 'q' or 'fp:<prime>'")
