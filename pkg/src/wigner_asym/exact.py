"""Exact Wigner 3j/6j/9j/15j/3nj symbols over big-rational arithmetic.

3j and 6j symbols evaluate to closed :class:`SqrtRational` form via the
single-sum formulas, with all factorial quotients assembled prime-wise.
9j, 15j and first-kind 3nj symbols are chains of exact 6j factors summed
over the intermediate spin; the sums are not closed in sqrt-rational form,
so each exact term is converted to high-precision floating point (default
50 significant digits plus guard digits) before accumulation.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import mpmath

from .errors import InternalConsistencyError
from .halfint import HalfInt, halfint_sum, triad_allowed
from .primefac import DEFAULT_LEDGER, FactorialLedger
from .sqrtrat import SqrtRational

#: Guard digits used on top of the requested precision.
PRECISION_GUARD = 15

DEFAULT_DPS = 50


# ----------------------------------------------------------------------
# 3j
# ----------------------------------------------------------------------

def wigner3j(j1, j2, j3, m1, m2, m3, ledger: FactorialLedger = DEFAULT_LEDGER) -> SqrtRational:
    """Exact Wigner 3j symbol.  Invalid quantum numbers give exact 0."""
    j1, j2, j3 = HalfInt(j1), HalfInt(j2), HalfInt(j3)
    m1, m2, m3 = HalfInt(m1), HalfInt(m2), HalfInt(m3)
    if m1.twice + m2.twice + m3.twice != 0:
        return SqrtRational.zero()
    if not triad_allowed(j1, j2, j3):
        return SqrtRational.zero()
    for j, m in ((j1, m1), (j2, m2), (j3, m3)):
        if abs(m.twice) > j.twice or (j.twice - m.twice) % 2 != 0:
            return SqrtRational.zero()

    t1, t2, t3 = j1.twice, j2.twice, j3.twice
    u1, u2, u3 = m1.twice, m2.twice, m3.twice
    a = (t1 + t2 - t3) // 2
    b = (t1 - u1) // 2
    c = (t2 + u2) // 2
    d = (t3 - t2 + u1) // 2
    e = (t3 - t1 - u2) // 2

    kmin = max(0, -d, -e)
    kmax = min(a, b, c)
    if kmax < kmin:
        return SqrtRational.zero()

    term = ledger.factorial_quotient(
        [(kmin, -1), (a - kmin, -1), (b - kmin, -1),
         (c - kmin, -1), (d + kmin, -1), (e + kmin, -1)]
    )
    if kmin % 2:
        term = -term
    total = term
    for k in range(kmin, kmax):
        term *= Fraction(-(a - k) * (b - k) * (c - k),
                         (k + 1) * (d + k + 1) * (e + k + 1))
        total += term
    if total == 0:
        return SqrtRational.zero()

    pre = [
        (a, 1), ((t1 - t2 + t3) // 2, 1), ((-t1 + t2 + t3) // 2, 1),
        ((t1 + t2 + t3) // 2 + 1, -1),
        ((t1 + u1) // 2, 1), ((t1 - u1) // 2, 1),
        ((t2 + u2) // 2, 1), ((t2 - u2) // 2, 1),
        ((t3 + u3) // 2, 1), ((t3 - u3) // 2, 1),
    ]
    rat, rad = ledger.sqrt_factorial_quotient(pre)
    sign = 1 if total > 0 else -1
    if ((t1 - t2 - u3) // 2) % 2:
        sign = -sign
    return SqrtRational.from_canonical(sign, abs(total) * rat, rad)


# ----------------------------------------------------------------------
# 6j
# ----------------------------------------------------------------------

_SIX_J_CACHE: dict = {}
_SIX_J_CACHE_MAX = 200_000
_six_j_cache_lock = threading.Lock()

_COLUMN_PERMS = tuple(permutations((0, 1, 2)))
_ROW_FLIPS = ((0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1))


def _canonical_6j_key(ta, tb, tc, td, te, tf):
    cols = ((ta, td), (tb, te), (tc, tf))
    best = None
    for perm in _COLUMN_PERMS:
        picked = (cols[perm[0]], cols[perm[1]], cols[perm[2]])
        for flips in _ROW_FLIPS:
            key = (
                picked[0][flips[0]], picked[1][flips[1]], picked[2][flips[2]],
                picked[0][1 - flips[0]], picked[1][1 - flips[1]], picked[2][1 - flips[2]],
            )
            if best is None or key < best:
                best = key
    return best


def wigner6j(a, b, c, d, e, f, ledger: FactorialLedger = DEFAULT_LEDGER) -> SqrtRational:
    """Exact 6j symbol {a b c; d e f} via the Racah single sum.

    Returns exact 0 when any of the four coupled triads
    (a,b,c), (a,e,f), (d,b,f), (d,e,c) fails.
    """
    a, b, c, d, e, f = (HalfInt(x) for x in (a, b, c, d, e, f))
    triads = ((a, b, c), (a, e, f), (d, b, f), (d, e, c))
    for tri in triads:
        if not triad_allowed(*tri):
            return SqrtRational.zero()

    key = _canonical_6j_key(a.twice, b.twice, c.twice, d.twice, e.twice, f.twice)
    cached = _SIX_J_CACHE.get(key)
    if cached is not None:
        return cached

    tsum = [(x.twice + y.twice + z.twice) // 2 for x, y, z in triads]
    psum = [
        (a.twice + b.twice + d.twice + e.twice) // 2,
        (b.twice + c.twice + e.twice + f.twice) // 2,
        (a.twice + c.twice + d.twice + f.twice) // 2,
    ]
    total = _racah_sum(tsum, psum, ledger)
    if total == 0:
        result = SqrtRational.zero()
    else:
        pre = []
        for x, y, z in triads:
            tx, ty, tz = x.twice, y.twice, z.twice
            pre += [
                ((tx + ty - tz) // 2, 1), ((tx - ty + tz) // 2, 1),
                ((-tx + ty + tz) // 2, 1), ((tx + ty + tz) // 2 + 1, -1),
            ]
        rat, rad = ledger.sqrt_factorial_quotient(pre)
        result = SqrtRational.from_canonical(1 if total > 0 else -1, abs(total) * rat, rad)

    if len(_SIX_J_CACHE) >= _SIX_J_CACHE_MAX:
        with _six_j_cache_lock:
            if len(_SIX_J_CACHE) >= _SIX_J_CACHE_MAX:
                _SIX_J_CACHE.clear()
    _SIX_J_CACHE[key] = result
    return result


def _racah_sum(tsum, psum, ledger) -> Fraction:
    """sum_z (-1)^z (z+1)! / prod[(z-T_i)! (P_j-z)!] over the allowed window."""
    zmin = max(tsum)
    zmax = min(psum)
    if zmax < zmin:
        return Fraction(0)
    term = ledger.factorial_quotient(
        [(zmin + 1, 1)]
        + [(zmin - t, -1) for t in tsum]
        + [(p - zmin, -1) for p in psum]
    )
    if zmin % 2:
        term = -term
    total = term
    for z in range(zmin, zmax):
        num = -(z + 2)
        for p in psum:
            num *= p - z
        den = 1
        for t in tsum:
            den *= z + 1 - t
        term *= Fraction(num, den)
        total += term
    return total


# ----------------------------------------------------------------------
# 9j
# ----------------------------------------------------------------------

_GRID_SLOTS = ("j1", "j2", "j12", "s", "j4", "j34", "j13", "j24", "j5")

#: The four 6j decompositions whose summation variable is Clebsch-Gordan
#: coupled to the (2,1) entry.  Keys name the grid entry the summation
#: variable pairs with; "j34" is kept as an alias of "j5" for compatibility
#: with the conventional naming of the fourth choice.
PIVOTS = ("j24", "j2", "j12", "j5")


@dataclass(frozen=True)
class Symbol9j:
    """A 9j symbol in the grid layout {j1 j2 j12; s j4 j34; j13 j24 j5}."""

    j1: HalfInt
    j2: HalfInt
    j12: HalfInt
    s: HalfInt
    j4: HalfInt
    j34: HalfInt
    j13: HalfInt
    j24: HalfInt
    j5: HalfInt

    @classmethod
    def from_values(cls, *values) -> "Symbol9j":
        if len(values) != 9:
            raise ValueError("Symbol9j needs nine spins")
        return cls(*(HalfInt(v) for v in values))

    @classmethod
    def from_twice(cls, *twice_values) -> "Symbol9j":
        return cls(*(HalfInt.from_twice(t) for t in twice_values))

    @property
    def grid(self):
        return (
            (self.j1, self.j2, self.j12),
            (self.s, self.j4, self.j34),
            (self.j13, self.j24, self.j5),
        )

    def triads(self):
        g = self.grid
        rows = [tuple(g[i]) for i in range(3)]
        cols = [tuple(g[i][j] for i in range(3)) for j in range(3)]
        return rows + cols

    def is_valid(self) -> bool:
        return all(triad_allowed(*t) for t in self.triads())

    def r_total(self) -> HalfInt:
        return halfint_sum([getattr(self, s) for s in _GRID_SLOTS])


@dataclass
class Wigner9jResult:
    value: mpmath.mpf
    terms: list          # [(x: HalfInt, contribution: mpf)]
    pivot: str


def wigner9j(sym: Symbol9j, pivot: str = "j24", dps: int = DEFAULT_DPS) -> Wigner9jResult:
    """Exact 9j symbol as a sum of signed products of three exact 6j symbols.

    The summation variable of every available decomposition satisfies
    Clebsch-Gordan conditions with the small-slot entry s; ``pivot`` selects
    which entry it pairs with.  The value is pivot-independent.
    """
    canonical = "j5" if pivot == "j34" else pivot
    if canonical not in PIVOTS:
        raise ValueError(f"unknown pivot {pivot!r}; expected one of {PIVOTS} (or 'j34')")
    if not sym.is_valid():
        return Wigner9jResult(mpmath.mpf(0), [], pivot)

    g = sym.grid
    t_r = sym.r_total()
    if t_r.twice % 2 != 0:
        raise InternalConsistencyError("9j with valid triads must have integer spin sum")
    odd_r = (t_r.twice // 2) % 2 == 1

    phase = 1
    if canonical == "j2":
        g = (g[2], g[1], g[0])
        phase = -1 if odd_r else 1
    elif canonical == "j12":
        g = tuple((row[0], row[2], row[1]) for row in g)
        g = (g[2], g[1], g[0])
    elif canonical == "j5":
        g = tuple((row[0], row[2], row[1]) for row in g)
        phase = -1 if odd_r else 1

    with mpmath.workdps(dps + PRECISION_GUARD):
        value, terms = _chain_9j_sum(g, phase)
    return Wigner9jResult(value, terms, pivot)


def _chain_9j_sum(g, phase: int):
    """sum_x (-1)^(2x) d_x {g11 g12 g13; g23 g33 x}{g21 g22 g23; g12 x g32}
    {g31 g32 g33; x g11 g21}, times an overall sign."""
    pairs = ((g[0][0], g[2][2]), (g[0][1], g[1][2]), (g[1][0], g[2][1]))
    parities = {(p.twice + q.twice) % 2 for p, q in pairs}
    if len(parities) != 1:
        return mpmath.mpf(0), []
    lo = max(abs(p.twice - q.twice) for p, q in pairs)
    hi = min(p.twice + q.twice for p, q in pairs)

    total = mpmath.mpf(0)
    terms = []
    for tx in range(lo, hi + 1, 2):
        x = HalfInt.from_twice(tx)
        s1 = wigner6j(g[0][0], g[0][1], g[0][2], g[1][2], g[2][2], x)
        s2 = wigner6j(g[1][0], g[1][1], g[1][2], g[0][1], x, g[2][1])
        s3 = wigner6j(g[2][0], g[2][1], g[2][2], x, g[0][0], g[1][0])
        prod = (s1 * s2 * s3).to_mpf()
        sign = -1 if tx % 2 else 1
        contribution = phase * sign * (tx + 1) * prod
        terms.append((x, contribution))
        total += contribution
    return total, terms


# ----------------------------------------------------------------------
# 15j and general first-kind 3nj
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Symbol3nj:
    """First-kind 3nj symbol: rows j[1..n], k[1..n], l[1..n].

    The coupled triads are the two cyclic chains (j_i, l_i, j_{i+1}) and
    (k_i, l_i, k_{i+1}) closed by the cross couplings (j_n, l_n, k_1) and
    (k_n, l_n, j_1).
    """

    j: tuple
    k: tuple
    l: tuple

    def __post_init__(self):
        j = tuple(HalfInt(x) for x in self.j)
        k = tuple(HalfInt(x) for x in self.k)
        l = tuple(HalfInt(x) for x in self.l)
        if not (len(j) == len(k) == len(l)):
            raise ValueError("rows must have equal length")
        if len(j) < 3:
            raise ValueError("first-kind 3nj symbols need n >= 3")
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "l", l)

    @property
    def n(self) -> int:
        return len(self.j)

    def triads(self):
        n = self.n
        out = []
        for i in range(n - 1):
            out.append((self.j[i], self.l[i], self.j[i + 1]))
        out.append((self.j[n - 1], self.l[n - 1], self.k[0]))
        for i in range(n - 1):
            out.append((self.k[i], self.l[i], self.k[i + 1]))
        out.append((self.k[n - 1], self.l[n - 1], self.j[0]))
        return out

    def is_valid(self) -> bool:
        return all(triad_allowed(*t) for t in self.triads())

    def r_total(self) -> HalfInt:
        return halfint_sum(list(self.j) + list(self.k) + list(self.l))

    def rotated(self, shift: int = 1) -> "Symbol3nj":
        """Circular permutation along the 2n-cycle (j_1..j_n, k_1..k_n),
        with the l row shifted in step; a symmetry of the symbol.
        Shifting by n exchanges the j and k rows."""
        n = self.n
        ring = list(self.j) + list(self.k)
        shift %= 2 * n
        ring = ring[shift:] + ring[:shift]
        ls = shift % n
        l = self.l[ls:] + self.l[:ls]
        return Symbol3nj(tuple(ring[:n]), tuple(ring[n:]), l)

    def rows_exchanged(self) -> "Symbol3nj":
        return Symbol3nj(self.k, self.j, self.l)


def wigner15j(j_row, k_row, l_row, dps: int = DEFAULT_DPS) -> mpmath.mpf:
    """Exact first-kind 15j symbol: sum over x of five exact 6j factors
    with the constant phase (-1)^(R_5)."""
    sym = Symbol3nj(tuple(j_row), tuple(k_row), tuple(l_row))
    if sym.n != 5:
        raise ValueError("wigner15j needs five columns")
    if not sym.is_valid():
        return mpmath.mpf(0)
    t_r = sym.r_total()
    if t_r.twice % 2 != 0:
        raise InternalConsistencyError("15j with valid triads must have integer spin sum")
    sign = -1 if (t_r.twice // 2) % 2 else 1

    j, k, l = sym.j, sym.k, sym.l
    window = _chain_window(j, k)
    if window is None:
        return mpmath.mpf(0)
    lo, hi = window

    with mpmath.workdps(dps + PRECISION_GUARD):
        total = mpmath.mpf(0)
        for tx in range(lo, hi + 1, 2):
            x = HalfInt.from_twice(tx)
            prod = wigner6j(j[0], k[0], x, k[1], j[1], l[0])
            prod = prod * wigner6j(j[1], k[1], x, k[2], j[2], l[1])
            prod = prod * wigner6j(j[2], k[2], x, k[3], j[3], l[2])
            prod = prod * wigner6j(j[3], k[3], x, k[4], j[4], l[3])
            prod = prod * wigner6j(j[4], k[4], x, j[0], k[0], l[4])
            total += sign * (tx + 1) * prod.to_mpf()
        return total


def wigner3nj(sym: Symbol3nj, dps: int = DEFAULT_DPS) -> mpmath.mpf:
    """Exact first-kind 3nj symbol via the cyclic 6j chain
    sum_x d_x (-1)^(R_n + (n-1) x) prod_p {j_p k_p x; k_{p+1} j_{p+1} l_p}."""
    if not sym.is_valid():
        return mpmath.mpf(0)
    n = sym.n
    j, k, l = sym.j, sym.k, sym.l
    window = _chain_window(j, k)
    if window is None:
        return mpmath.mpf(0)
    lo, hi = window
    t_r = sym.r_total().twice

    with mpmath.workdps(dps + PRECISION_GUARD):
        total = mpmath.mpf(0)
        for tx in range(lo, hi + 1, 2):
            twice_exp = t_r + (n - 1) * tx
            if twice_exp % 2 != 0:
                raise InternalConsistencyError(
                    "phase exponent R_n + (n-1)x must be an integer for valid symbols"
                )
            sign = -1 if (twice_exp // 2) % 2 else 1
            x = HalfInt.from_twice(tx)
            prod = SqrtRational.of(1)
            for p in range(n - 1):
                prod = prod * wigner6j(j[p], k[p], x, k[p + 1], j[p + 1], l[p])
                if prod.is_zero:
                    break
            if not prod.is_zero:
                prod = prod * wigner6j(j[n - 1], k[n - 1], x, j[0], k[0], l[n - 1])
            total += sign * (tx + 1) * prod.to_mpf()
        return total


def _chain_window(j, k):
    """Intersection of the Clebsch-Gordan windows (j_i, k_i, x), as twice
    values; None when empty or parity-inconsistent."""
    parities = {(a.twice + b.twice) % 2 for a, b in zip(j, k)}
    if len(parities) != 1:
        return None
    lo = max(abs(a.twice - b.twice) for a, b in zip(j, k))
    hi = min(a.twice + b.twice for a, b in zip(j, k))
    if hi < lo:
        return None
    return lo, hi
