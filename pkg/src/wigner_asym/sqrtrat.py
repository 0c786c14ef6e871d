"""Exact values of the form sign * r * sqrt(q).

Closed form for 3j and 6j symbols: a signed rational times the square root
of a squarefree positive integer.  Canonicalization pulls every square
factor of the radicand into the rational part, so equality is structural.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath

from .primefac import DEFAULT_LEDGER


class SqrtRational:
    """sign * rat * sqrt(rad) with rat a positive Fraction, rad squarefree."""

    __slots__ = ("sign", "rat", "rad")

    def __init__(self, sign: int, rat, rad):
        rat = Fraction(rat)
        rad = Fraction(rad)
        if rad < 0:
            raise ValueError("radicand must be non-negative")
        if sign == 0 or rat == 0 or rad == 0:
            sign, rat, rad = 0, Fraction(0), Fraction(1)
        else:
            if sign not in (-1, 1):
                raise ValueError("sign must be -1, 0 or +1")
            if rat < 0:
                sign, rat = -sign, -rat
            rat_extra, rad_int = _canonical_radicand(rad)
            rat *= rat_extra
            rad = Fraction(rad_int)
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "rat", rat)
        object.__setattr__(self, "rad", rad)

    @classmethod
    def of(cls, value) -> "SqrtRational":
        """Exact rational value, radicand 1."""
        v = Fraction(value)
        if v == 0:
            return cls.zero()
        return cls(1 if v > 0 else -1, abs(v), 1)

    @classmethod
    def zero(cls) -> "SqrtRational":
        return cls(0, 0, 1)

    @classmethod
    def from_canonical(cls, sign: int, rat: Fraction, squarefree_rad: int) -> "SqrtRational":
        """Fast path for radicands already known to be squarefree."""
        obj = cls.__new__(cls)
        if sign == 0 or rat == 0:
            object.__setattr__(obj, "sign", 0)
            object.__setattr__(obj, "rat", Fraction(0))
            object.__setattr__(obj, "rad", Fraction(1))
            return obj
        if rat < 0:
            sign, rat = -sign, -rat
        object.__setattr__(obj, "sign", sign)
        object.__setattr__(obj, "rat", rat)
        object.__setattr__(obj, "rad", Fraction(squarefree_rad))
        return obj

    # -- queries ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def value_squared(self) -> Fraction:
        """Exact square (always rational)."""
        return self.rat * self.rat * self.rad

    def to_mpf(self) -> mpmath.mpf:
        """Value at the current mpmath working precision."""
        if self.sign == 0:
            return mpmath.mpf(0)
        v = mpmath.mpf(self.rat.numerator) / self.rat.denominator
        if self.rad != 1:
            v *= mpmath.sqrt(mpmath.mpf(self.rad.numerator))
        return self.sign * v

    def __float__(self) -> float:
        with mpmath.workdps(40):
            return float(self.to_mpf())

    # -- algebra ---------------------------------------------------------

    def __neg__(self):
        return SqrtRational.from_canonical(-self.sign, self.rat, int(self.rad))

    def __mul__(self, other):
        if isinstance(other, SqrtRational):
            if self.sign == 0 or other.sign == 0:
                return SqrtRational.zero()
            r1, r2 = int(self.rad), int(other.rad)
            g = math.gcd(r1, r2)
            # squarefree * squarefree: the shared part squares out exactly
            return SqrtRational.from_canonical(
                self.sign * other.sign,
                self.rat * other.rat * g,
                (r1 // g) * (r2 // g),
            )
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0 or self.sign == 0:
                return SqrtRational.zero()
            s = self.sign if q > 0 else -self.sign
            return SqrtRational.from_canonical(s, self.rat * abs(q), int(self.rad))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SqrtRational):
            return NotImplemented
        return (self.sign, self.rat, self.rad) == (other.sign, other.rat, other.rad)

    def __hash__(self):
        return hash((self.sign, self.rat, self.rad))

    def __setattr__(self, name, value):
        raise AttributeError("SqrtRational is immutable")

    def __repr__(self):
        return f"SqrtRational({self})"

    def __str__(self):
        if self.sign == 0:
            return "0"
        s = "-" if self.sign < 0 else ""
        if self.rad == 1:
            return f"{s}{self.rat}"
        if self.rat == 1:
            return f"{s}sqrt({self.rad})"
        return f"{s}{self.rat}*sqrt({self.rad})"


_CANONICALIZE_LIMIT = 10**12


def _canonical_radicand(rad: Fraction):
    """(rational factor, squarefree int) with sqrt(rad) = factor*sqrt(int).

    Clears the denominator (sqrt(a/b) = sqrt(a*b)/b), then strips square
    factors by trial division.  Intended for modest radicands; the symbol
    engines build radicands directly from prime exponent vectors instead.
    """
    n = rad.numerator * rad.denominator
    factor = Fraction(1, rad.denominator)
    if n == 0:
        return Fraction(0), 0
    if n > _CANONICALIZE_LIMIT:
        raise ValueError(
            "radicand too large for trial-division canonicalization; "
            "use from_canonical with a known-squarefree radicand"
        )
    root = math.isqrt(n)
    if root * root == n:
        return factor * root, 1
    square, free = 1, 1
    for p in DEFAULT_LEDGER.primes_upto(math.isqrt(n) + 1):
        if p * p > n:
            break
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            square *= p ** (e // 2)
            if e % 2:
                free *= p
    free *= n   # leftover n is prime or 1
    return factor * square, free
