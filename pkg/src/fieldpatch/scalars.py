"""Exact ground fields: the rationals and prime fields F_p.

Scalars are plain numbers rather than wrapper objects, so the hot loops in
the series kernel run on native arithmetic:

* over Q a scalar is a ``gmpy2.mpq``;
* over F_p a scalar is a Python ``int`` in ``range(p)``.

A :class:`Field` knows how to coerce, reduce, invert, print and parse its
scalars.  Arithmetic that may leave the canonical range (sums and products
of ints mod p) is finished with :meth:`Field.norm`.
"""

from __future__ import annotations

import re
from fractions import Fraction

import gmpy2
from gmpy2 import mpq

_SCALAR_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def _is_prime(n: int) -> bool:
    return n >= 2 and gmpy2.is_prime(n)


class Field:
    """Q when ``p == 0``, otherwise the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p and not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = int(p)

    # identity -----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if not self.p else f"GF({self.p})"

    @property
    def char(self) -> int:
        return self.p

    @property
    def spec(self) -> str:
        """Command-line spelling: ``q`` or ``fp:P``."""
        return "q" if not self.p else f"fp:{self.p}"

    @classmethod
    def from_spec(cls, text: str) -> "Field":
        text = text.strip().lower()
        if text in ("q", "qq", "rationals"):
            return cls(0)
        if text.startswith("fp:"):
            return cls(int(text[3:]))
        raise ValueError(f"unknown field spec {text!r} (expected 'q' or 'fp:P')")

    # scalars ------------------------------------------------------------
    @property
    def zero(self):
        return mpq(0) if not self.p else 0

    @property
    def one(self):
        return mpq(1) if not self.p else 1

    def __call__(self, value):
        """Coerce an int, Fraction, mpq or ``"a/b"`` string into the field."""
        if isinstance(value, str):
            return self.parse(value)
        if self.p:
            if isinstance(value, int):
                return value % self.p
            q = mpq(value) if not isinstance(value, Fraction) else mpq(value.numerator, value.denominator)
            num, den = int(q.numerator), int(q.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"{value} has no image in GF({self.p})")
            return num * pow(den, -1, self.p) % self.p
        if isinstance(value, Fraction):
            return mpq(value.numerator, value.denominator)
        return mpq(value)

    def norm(self, c):
        return c % self.p if self.p else c

    def inv(self, c):
        if c == 0:
            raise ZeroDivisionError("division by zero in ground field")
        if self.p:
            return pow(int(c), -1, self.p)
        return 1 / mpq(c)

    def div(self, a, b):
        return self.norm(a * self.inv(b))

    def neg(self, c):
        return (-c) % self.p if self.p else -c

    # text ---------------------------------------------------------------
    def fmt(self, c) -> str:
        if self.p:
            return str(int(c) % self.p)
        c = mpq(c)
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"

    def parse(self, text: str):
        m = _SCALAR_RE.match(text)
        if not m:
            raise ValueError(f"not a scalar: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return self(mpq(num, den)) if not self.p else self(Fraction(num, den))

    def random(self, rng, bound: int = 5):
        """A small random scalar (uniform over F_p, or an integer in [-bound, bound])."""
        if self.p:
            return rng.randrange(self.p)
        return mpq(rng.randint(-bound, bound))


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
