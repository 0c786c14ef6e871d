"""Half-integer quantum numbers stored as twice-value integers.

Every spin and projection in the package is a :class:`HalfInt`.  Storing
``twice = 2j`` makes all parity checks (triangle sums, phase exponents)
exact integer arithmetic, with no rational parsing anywhere.
"""

from __future__ import annotations

from fractions import Fraction


class HalfInt:
    """An element of Z/2: a spin magnitude or a projection.

    Construct from a value (``HalfInt(2)``, ``HalfInt(1.5)``,
    ``HalfInt("3/2")``, ``HalfInt(Fraction(1, 2))``) or from a twice-value
    integer via :meth:`from_twice`.
    """

    __slots__ = ("twice",)

    def __init__(self, value):
        if isinstance(value, HalfInt):
            t = value.twice
        elif isinstance(value, int):
            t = 2 * value
        elif isinstance(value, Fraction):
            t = _twice_from_fraction(value)
        elif isinstance(value, float):
            t = _twice_from_fraction(Fraction(value).limit_denominator(2))
            if abs(float(t) / 2.0 - value) > 1e-9:
                raise ValueError(f"{value!r} is not a half-integer")
        elif isinstance(value, str):
            t = _twice_from_fraction(Fraction(value))
        else:
            raise TypeError(f"cannot build HalfInt from {type(value).__name__}")
        object.__setattr__(self, "twice", t)

    @classmethod
    def from_twice(cls, twice: int) -> "HalfInt":
        if not isinstance(twice, int):
            raise TypeError("twice-value must be an int")
        obj = cls.__new__(cls)
        object.__setattr__(obj, "twice", twice)
        return obj

    # -- basic queries -------------------------------------------------

    @property
    def dim(self) -> int:
        """Dimension 2j+1 of the spin-j representation."""
        return self.twice + 1

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __float__(self) -> float:
        return self.twice / 2.0

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        return HalfInt.from_twice(self.twice + _twice_of(other))

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt.from_twice(self.twice - _twice_of(other))

    def __rsub__(self, other):
        return HalfInt.from_twice(_twice_of(other) - self.twice)

    def __neg__(self):
        return HalfInt.from_twice(-self.twice)

    def __abs__(self):
        return HalfInt.from_twice(abs(self.twice))

    def __mul__(self, other):
        if not isinstance(other, int):
            return NotImplemented
        return HalfInt.from_twice(self.twice * other)

    __rmul__ = __mul__

    # -- ordering ------------------------------------------------------

    def __eq__(self, other):
        try:
            return self.twice == _twice_of(other)
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        return self.twice < _twice_of(other)

    def __le__(self, other):
        return self.twice <= _twice_of(other)

    def __gt__(self, other):
        return self.twice > _twice_of(other)

    def __ge__(self, other):
        return self.twice >= _twice_of(other)

    def __hash__(self):
        return hash(self.as_fraction())

    def __setattr__(self, name, value):
        raise AttributeError("HalfInt is immutable")

    def __repr__(self):
        return f"HalfInt({self})"

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


def _twice_of(x) -> int:
    if isinstance(x, HalfInt):
        return x.twice
    if isinstance(x, int):
        return 2 * x
    raise TypeError(f"expected HalfInt or int, got {type(x).__name__}")


def _twice_from_fraction(f: Fraction) -> int:
    g = f * 2
    if g.denominator != 1:
        raise ValueError(f"{f} is not a half-integer")
    return g.numerator


def halfint_sum(values) -> HalfInt:
    t = 0
    for v in values:
        t += _twice_of(v)
    return HalfInt.from_twice(t)


def phase_from_integer_exponent(e: HalfInt) -> int:
    """(-1)**e for an exponent that must be an integer.

    Raises ValueError when ``e`` is a genuine half-integer; callers that
    can tolerate that case should use :func:`phase_complex` instead.
    """
    if e.twice % 2 != 0:
        raise ValueError(f"phase exponent {e} is not an integer")
    return -1 if (e.twice // 2) % 2 else 1


def phase_complex(e: HalfInt) -> complex:
    """exp(i*pi*e) evaluated exactly on the quarter lattice: one of +-1, +-i."""
    return (1, 1j, -1, -1j)[e.twice % 4]


def triad_allowed(a: HalfInt, b: HalfInt, c: HalfInt) -> bool:
    """Clebsch-Gordan condition: triangle inequality plus integer sum."""
    ta, tb, tc = a.twice, b.twice, c.twice
    if min(ta, tb, tc) < 0:
        return False
    if (ta + tb + tc) % 2 != 0:
        return False
    return abs(ta - tb) <= tc <= ta + tb


class Triad:
    """A coupled spin triple; raises ValueError when not allowed."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a: HalfInt, b: HalfInt, c: HalfInt):
        if not triad_allowed(a, b, c):
            raise ValueError(f"({a}, {b}, {c}) violates the Clebsch-Gordan conditions")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def __setattr__(self, name, value):
        raise AttributeError("Triad is immutable")

    def __repr__(self):
        return f"Triad({self.a}, {self.b}, {self.c})"
