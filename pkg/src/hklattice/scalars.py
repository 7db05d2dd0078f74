"""Exact scalar domains beyond plain rationals.

Everything in the toolkit computes over Q by default (``fractions.Fraction``).
Two small extensions are provided here:

* :class:`QuadExt` -- elements a + b*sqrt(d) of a real quadratic field
  Q(sqrt(d)), d a square-free positive integer.  This is the only irrational
  domain the toolkit supports; every construction that leaves Q does so by
  solving a single quadratic equation.
* :class:`GaussianRational` -- elements a + b*i of Q(i), used when a real
  identity has to be closed up over the complex numbers.

Also hosts the string form used in all JSON files ("p/q" or an integer
string; bit-exact round trip) and integer square-part utilities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint

from .errors import InputError

Rational = Fraction


def parse_rational(value) -> Fraction:
    """Parse "p/q" / integer strings (also plain ints) into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError("domain", f"cannot parse rational {value!r}") from exc
    raise InputError("domain", f"cannot parse rational from {type(value).__name__}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Write n = t^2 * d with d square-free (d carries the sign of n).

    Returns (t, d) with t > 0.  n must be nonzero.
    """
    if n == 0:
        raise InputError("domain", "squarefree decomposition of 0")
    sign = -1 if n < 0 else 1
    t = 1
    d = 1
    for p, e in factorint(abs(n)).items():
        t *= p ** (e // 2)
        if e % 2:
            d *= p
    return t, sign * d


def square_class(x: Fraction) -> int:
    """The square-free integer representing x modulo nonzero rational squares."""
    x = Fraction(x)
    if x == 0:
        raise InputError("domain", "square class of 0")
    return squarefree_decomposition(x.numerator * x.denominator)[1]


def is_rational_square(x: Fraction) -> bool:
    x = Fraction(x)
    if x < 0:
        return False
    if x == 0:
        return True
    n, d = x.numerator, x.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def rational_sqrt(x: Fraction) -> "QuadExt":
    """sqrt(x) for x >= 0 as an exact QuadExt value s*sqrt(d)."""
    x = Fraction(x)
    if x < 0:
        raise InputError("domain", "square root of a negative rational")
    if x == 0:
        return QuadExt(Fraction(0), Fraction(0), 1)
    t, d = squarefree_decomposition(x.numerator * x.denominator)
    # sqrt(p/q) = sqrt(p*q)/q = (t/q) * sqrt(d)
    s = Fraction(t, x.denominator)
    if d == 1:
        return QuadExt(s, Fraction(0), 1)
    return QuadExt(Fraction(0), s, d)


@dataclass(frozen=True)
class QuadExt:
    """Exact element a + b*sqrt(d) of Q(sqrt(d)), d square-free positive.

    Rational values are stored with d = 1 and b = 0, so mixed arithmetic with
    plain rationals always works; combining two genuinely irrational values
    requires matching d.
    """

    a: Fraction
    b: Fraction
    d: int

    @staticmethod
    def make(a, b=0, d: int = 1) -> "QuadExt":
        a = parse_rational(a) if not isinstance(a, Fraction) else a
        b = parse_rational(b) if not isinstance(b, Fraction) else b
        if d <= 0:
            raise InputError("domain", f"QuadExt requires d > 0, got {d}")
        if b == 0:
            return QuadExt(a, Fraction(0), 1)
        t, d0 = squarefree_decomposition(d)
        if d0 == 1:
            return QuadExt(a + b * t, Fraction(0), 1)
        return QuadExt(a, b * t, d0)

    @staticmethod
    def rational(x) -> "QuadExt":
        return QuadExt.make(x)

    @staticmethod
    def coerce(x) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        return QuadExt.make(x)

    # -- arithmetic ---------------------------------------------------------

    def _match(self, other) -> tuple["QuadExt", "QuadExt"]:
        other = QuadExt.coerce(other)
        if self.d == other.d:
            return self, other
        if self.b == 0:
            return QuadExt(self.a, Fraction(0), other.d), other
        if other.b == 0:
            return self, QuadExt(other.a, Fraction(0), self.d)
        raise InputError("domain", f"incompatible radicands sqrt({self.d}) and sqrt({other.d})")

    def __add__(self, other):
        x, y = self._match(other)
        return QuadExt.make(x.a + y.a, x.b + y.b, x.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-QuadExt.coerce(other))

    def __rsub__(self, other):
        return QuadExt.coerce(other) - self

    def __mul__(self, other):
        x, y = self._match(other)
        return QuadExt.make(x.a * y.a + x.b * y.b * x.d, x.a * y.b + x.b * y.a, x.d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("domain", "negative QuadExt power")
        out = QuadExt.rational(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            x, y = self._match(other)
        except InputError:
            return NotImplemented
        return x.a == y.a and x.b == y.b and x.d == y.d

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def sign(self) -> int:
        """Exact sign of the real value a + b*sqrt(d)."""
        a, b, d = self.a, self.b, self.d
        if b == 0:
            return 0 if a == 0 else (1 if a > 0 else -1)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 d (equality impossible,
        # sqrt(d) is irrational for square-free d > 1)
        if a * a > b * b * d:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def __lt__(self, other):
        x, y = self._match(other)
        return (x - y).sign() < 0

    def __le__(self, other):
        x, y = self._match(other)
        return (x - y).sign() <= 0

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise InputError("domain", "value is irrational")
        return self.a

    def __repr__(self):
        if self.b == 0:
            return format_rational(self.a)
        return f"({format_rational(self.a)} + {format_rational(self.b)}*sqrt({self.d}))"

    def to_json(self) -> dict:
        return {"a": format_rational(self.a), "b": format_rational(self.b), "d": self.d}

    @staticmethod
    def from_json(obj: dict) -> "QuadExt":
        return QuadExt.make(parse_rational(obj["a"]), parse_rational(obj["b"]), int(obj["d"]))


@dataclass(frozen=True)
class GaussianRational:
    """Exact element re + im*i of Q(i)."""

    re: Fraction
    im: Fraction

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(Fraction(x), Fraction(0))

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = GaussianRational(Fraction(1), Fraction(0))
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"({format_rational(self.re)} + {format_rational(self.im)}i)"
