"""Exact coefficient fields: the rationals and prime fields F_p.

Elements are plain Python values: ``Fraction`` for the rationals and
``int`` canonical representatives in ``[0, p)`` for F_p.  The field
objects only bundle the arithmetic; keeping elements unboxed is what
makes the term kernels cheap.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError


class RationalField:
    """The field Q.  Elements are ``Fraction`` in lowest terms."""

    char = 0

    zero = Fraction(0)
    one = Fraction(1)

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
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def from_fraction(self, q: Fraction) -> Fraction:
        return Fraction(q)

    def format(self, a: Fraction) -> str:
        return str(a)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """The field F_p for a machine-word prime p.

    Elements are ints in ``[0, p)``.
    """

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.char = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.char

    def sub(self, a, b):
        return (a - b) % self.char

    def mul(self, a, b):
        return (a * b) % self.char

    def neg(self, a):
        return (-a) % self.char

    def inv(self, a):
        if a % self.char == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.char - 2, self.char)

    def from_fraction(self, q: Fraction) -> int:
        den = q.denominator % self.char
        if den == 0:
            raise ParseError(f"denominator {q.denominator} is 0 mod {self.char}")
        return q.numerator % self.char * self.inv(den) % self.char

    def format(self, a: int) -> str:
        return str(a % self.char)

    def __repr__(self):
        return f"GF({self.char})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.char == self.char

    def __hash__(self):
        return hash(("GF", self.char))


_QQ = RationalField()
_PRIMES: dict[int, PrimeField] = {}


def QQ() -> RationalField:
    return _QQ


def GF(p: int) -> PrimeField:
    if p not in _PRIMES:
        _PRIMES[p] = PrimeField(p)
    return _PRIMES[p]


def field_from_json(desc) -> RationalField | PrimeField:
    """Field descriptor: ``{"rationals": true}`` or ``{"char": p}``."""
    if not isinstance(desc, dict):
        raise ParseError(f"bad field descriptor {desc!r}")
    if desc.get("rationals"):
        return QQ()
    if "char" in desc:
        return GF(int(desc["char"]))
    raise ParseError(f"bad field descriptor {desc!r}")


def field_to_json(field) -> dict:
    if field.char == 0:
        return {"rationals": True}
    return {"char": field.char}
