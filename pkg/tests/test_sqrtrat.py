import math
from fractions import Fraction

import mpmath
import pytest

from wigner_asym.sqrtrat import SqrtRational


def test_canonicalization_extracts_squares():
    v = SqrtRational(1, 1, 8)
    assert v.rat == Fraction(2) and v.rad == 2
    v = SqrtRational(1, 1, Fraction(9, 4))
    assert v.rat == Fraction(3, 2) and v.rad == 1
    # denominator radicand: sqrt(1/3) = (1/3) sqrt(3)
    v = SqrtRational(1, 1, Fraction(1, 3))
    assert v.rat == Fraction(1, 3) and v.rad == 3
    v = SqrtRational(-1, Fraction(-2, 3), 18)
    assert v.sign == 1 and v.rat == Fraction(2) and v.rad == 2


def test_zero_canonical_form():
    z = SqrtRational.zero()
    assert z.is_zero and z.rat == 0 and z.rad == 1
    assert SqrtRational(0, 5, 7) == z
    assert SqrtRational(1, 0, 7) == z
    assert SqrtRational(1, 5, 0) == z
    assert str(z) == "0"


def test_multiplication_squares_out_common_radicals():
    a = SqrtRational(1, Fraction(1, 2), 6)
    b = SqrtRational(-1, Fraction(2, 3), 15)
    prod = a * b
    # sqrt(6) sqrt(15) = 3 sqrt(10)
    assert prod.sign == -1
    assert prod.rat == Fraction(1, 2) * Fraction(2, 3) * 3
    assert prod.rad == 10
    sq = a * a
    assert sq.rad == 1 and sq.rat == Fraction(6, 4)
    assert (a * Fraction(-2)).sign == -1
    assert (a * 0).is_zero


def test_value_and_float():
    v = SqrtRational(-1, Fraction(1, 3), 3)   # -1/sqrt(3)
    assert abs(float(v) + 1 / math.sqrt(3)) < 1e-15
    assert v.value_squared() == Fraction(1, 3)
    with mpmath.workdps(60):
        x = v.to_mpf()
        assert abs(x + 1 / mpmath.sqrt(3)) < mpmath.mpf(10) ** -58


def test_equality_and_repr():
    assert SqrtRational(1, Fraction(2), 3) == SqrtRational(1, Fraction(2), 3)
    assert SqrtRational.of(Fraction(-5, 7)).sign == -1
    assert str(SqrtRational(1, Fraction(1, 35), 35)) == "1/35*sqrt(35)"
    assert str(SqrtRational.of(Fraction(1, 6))) == "1/6"


def test_huge_radicand_guard():
    with pytest.raises(ValueError):
        SqrtRational(1, 1, 10**14 + 1)
    # from_canonical bypasses factorization for known squarefree inputs
    v = SqrtRational.from_canonical(1, Fraction(1), 10**14 + 1)
    assert v.rad == 10**14 + 1
