"""Exact scalar arithmetic: rationals, prime fields, and quadratic extensions.

All kernel arithmetic is exact.  Rational coefficients are Python
``fractions.Fraction`` values; prime-field coefficients are plain ints in
``[0, p)`` with the modulus carried by the field object.  No floating point
anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

DEFAULT_PRIME = 32003


def binomial(n, k):
    """C(n, k) as an exact integer; 0 when k > n or k < 0."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


class RationalField:
    """The rationals, with elements represented as Fraction."""

    zero = Fraction(0)
    one = Fraction(1)

    name = "QQ"

    def __call__(self, a, b=1):
        return Fraction(a, b)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / a

    def div(self, a, b):
        return a / b

    def is_zero(self, a):
        return a == 0

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """GF(p) for an odd machine-word prime; elements are ints in [0, p)."""

    def __init__(self, p=DEFAULT_PRIME):
        if p < 3 or p % 2 == 0:
            raise ValueError(f"modulus must be an odd prime, got {p}")
        # probable-prime check is enough at word scale
        if any(p % q == 0 for q in range(3, min(p, 1000), 2) if q * q <= p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1
        self.name = f"GF({p})"

    def __call__(self, a, b=1):
        v = a % self.p
        if b != 1:
            v = v * pow(b % self.p, self.p - 2, self.p) % self.p
        return v

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(p)")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a):
        return a == 0

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


GF = PrimeField
QQ = RationalField()


def _is_square_free(D):
    d = 2
    while d * d <= D:
        if D % (d * d) == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class QuadExt:
    """An element a + b*sqrt(D) of the real quadratic field Q(sqrt(D)).

    D is a fixed square-free positive integer; a and b are rationals.
    Comparisons and the sign are decided exactly by squaring.
    """

    a: Fraction
    b: Fraction
    D: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.D <= 0 or not _is_square_free(self.D):
            raise ValueError(f"D must be positive and square-free, got {self.D}")

    def _check(self, other):
        if isinstance(other, QuadExt):
            if other.D != self.D:
                raise ValueError("mixed quadratic extensions")
            return other
        return QuadExt(Fraction(other), 0, self.D)

    def __add__(self, other):
        o = self._check(other)
        return QuadExt(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.D)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        o = self._check(other)
        return QuadExt(
            self.a * o.a + self.b * o.b * self.D,
            self.a * o.b + self.b * o.a,
            self.D,
        )

    __rmul__ = __mul__

    def inverse(self):
        n = self.a * self.a - self.b * self.b * self.D
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q(sqrt(D))")
        return QuadExt(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def sign(self):
        return quadext_sign(self)

    def __lt__(self, other):
        return (self - self._check(other)).sign() < 0

    def __le__(self, other):
        return (self - self._check(other)).sign() <= 0

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.D}))"


def quadext_sign(x):
    """Exact sign of a + b*sqrt(D): -1, 0, or +1, no floating point.

    Compares a^2 against b^2 * D after a case split on the signs of a and b.
    """
    a, b, D = x.a, x.b, x.D
    if b == 0:
        return 0 if a == 0 else (1 if a > 0 else -1)
    if a == 0:
        return 1 if b > 0 else -1
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # opposite signs: |a| vs |b|*sqrt(D)
    lhs, rhs = a * a, b * b * D
    if lhs == rhs:
        return 0
    bigger_is_a = lhs > rhs
    if a > 0:
        return 1 if bigger_is_a else -1
    return -1 if bigger_is_a else 1
