"""Algebraic identity checks for the exact engine, shared by the CLI
``verify identities`` command and the test suite.

The pentagon (Biedenharn-Elliott) identity and the 6j orthogonality
relation are classical consistency conditions tying many 6j values
together; they validate the exact engine without reference to any
external table.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .exact import Symbol3nj, Symbol9j, wigner6j
from .halfint import HalfInt, halfint_sum, triad_allowed


def _window(x: HalfInt, y: HalfInt):
    return abs(x.twice - y.twice), x.twice + y.twice


def _sample_coupled(rng, w1, w2):
    """A twice-value in both windows (parities must agree), or None."""
    if (w1[0] % 2) != (w2[0] % 2):
        return None
    lo = max(w1[0], w2[0])
    hi = min(w1[1], w2[1])
    if hi < lo:
        return None
    return rng.randrange(lo, hi + 1, 2)


def random_pentagon_instance(rng, tmax: int = 20):
    """Spins (a..f, p, q, r) with every triad of the pentagon identity valid."""
    for _ in range(1000):
        a, b, c, d, e, f = (HalfInt.from_twice(rng.randrange(0, tmax + 1)) for _ in range(6))
        # x couples (a,b), (c,d), (e,f): the three windows must share parity
        if not ((a.twice + b.twice) % 2 == (c.twice + d.twice) % 2 == (e.twice + f.twice) % 2):
            continue
        tp = _sample_coupled(rng, _window(a, d), _window(c, b))
        tq = _sample_coupled(rng, _window(c, f), _window(e, d))
        tr = _sample_coupled(rng, _window(e, a), _window(b, f))
        if tp is None or tq is None or tr is None:
            continue
        p, q, r = HalfInt.from_twice(tp), HalfInt.from_twice(tq), HalfInt.from_twice(tr)
        if not triad_allowed(p, q, r):
            continue
        return a, b, c, d, e, f, p, q, r
    return None


def pentagon_sides(spins):
    """(lhs, rhs) of sum_x (-1)^(R+x) d_x {a b x; c d p}{c d x; e f q}
    {e f x; b a r} = {p q r; e a d}{p q r; f b c}, at the current mpmath
    precision."""
    a, b, c, d, e, f, p, q, r = spins
    r_all = halfint_sum([a, b, c, d, e, f, p, q, r])
    lo = max(abs(a.twice - b.twice), abs(c.twice - d.twice), abs(e.twice - f.twice))
    hi = min(a.twice + b.twice, c.twice + d.twice, e.twice + f.twice)
    lhs = mpmath.mpf(0)
    for tx in range(lo, hi + 1, 2):
        x = HalfInt.from_twice(tx)
        exp2 = r_all.twice + tx
        if exp2 % 2:
            raise ValueError("pentagon phase exponent R + x must be an integer")
        sign = -1 if (exp2 // 2) % 2 else 1
        lhs += sign * (tx + 1) * (
            wigner6j(a, b, x, c, d, p)
            * wigner6j(c, d, x, e, f, q)
            * wigner6j(e, f, x, b, a, r)
        ).to_mpf()
    rhs = (wigner6j(p, q, r, e, a, d) * wigner6j(p, q, r, f, b, c)).to_mpf()
    return lhs, rhs


def random_orthogonality_instance(rng, tmax: int = 16):
    """(a, b, c, d, p, q) with valid couplings for the 6j orthogonality sum."""
    for _ in range(1000):
        a, b, c, d = (HalfInt.from_twice(rng.randrange(0, tmax + 1)) for _ in range(4))
        if (a.twice + b.twice) % 2 != (c.twice + d.twice) % 2:
            continue
        tp = _sample_coupled(rng, _window(a, d), _window(c, b))
        tq = _sample_coupled(rng, _window(a, d), _window(c, b))
        if tp is None or tq is None:
            continue
        return a, b, c, d, HalfInt.from_twice(tp), HalfInt.from_twice(tq)
    return None


def orthogonality_defect(a, b, c, d, p, q):
    """Exact defect of sum_x d_x {a b x; c d p}{a b x; c d q} = delta_pq / d_p.

    Terms are grouped by the (squarefree) radicand of the exact product,
    so the comparison is pure rational arithmetic: the returned dict maps
    radicand -> leftover rational coefficient; an empty dict means the
    identity holds exactly.
    """
    lo = max(abs(a.twice - b.twice), abs(c.twice - d.twice))
    hi = min(a.twice + b.twice, c.twice + d.twice)
    buckets: dict = {}
    for tx in range(lo, hi + 1, 2):
        x = HalfInt.from_twice(tx)
        prod = wigner6j(a, b, x, c, d, p) * wigner6j(a, b, x, c, d, q)
        if prod.is_zero:
            continue
        coeff = prod.sign * prod.rat * (tx + 1)
        key = int(prod.rad)
        buckets[key] = buckets.get(key, Fraction(0)) + coeff
    if p == q:
        buckets[1] = buckets.get(1, Fraction(0)) - Fraction(1, p.dim)
    return {k: v for k, v in buckets.items() if v != 0}


def pentagon_max_residual(rng, instances: int, tmax: int = 20):
    """Worst relative pentagon residual over random instances; the scale
    guard keeps near-zero right-hand sides from inflating the ratio."""
    worst = mpmath.mpf(0)
    done = 0
    while done < instances:
        spins = random_pentagon_instance(rng, tmax)
        if spins is None:
            continue
        lhs, rhs = pentagon_sides(spins)
        scale = max(abs(lhs), abs(rhs))
        if scale < mpmath.mpf(10) ** -10:
            continue   # numerically trivial instance
        worst = max(worst, abs(lhs - rhs) / scale)
        done += 1
    return worst


def random_valid_9j(rng, tmax: int = 24) -> Symbol9j:
    """A 9j grid with all six triads valid (rejection sampling)."""
    while True:
        ta, tb = rng.randrange(0, tmax + 1), rng.randrange(0, tmax + 1)
        tc = _sample_coupled(rng, _window(HalfInt.from_twice(ta), HalfInt.from_twice(tb)),
                             (0, 2 * tmax))
        td, te = rng.randrange(0, tmax + 1), rng.randrange(0, tmax + 1)
        tf = _sample_coupled(rng, _window(HalfInt.from_twice(td), HalfInt.from_twice(te)),
                             (0, 2 * tmax))
        if tc is None or tf is None:
            continue
        h = HalfInt.from_twice
        tg = _sample_coupled(rng, _window(h(ta), h(td)), (0, 4 * tmax))
        th_ = _sample_coupled(rng, _window(h(tb), h(te)), (0, 4 * tmax))
        if tg is None or th_ is None:
            continue
        ti = _sample_coupled(rng, _window(h(tc), h(tf)), _window(h(tg), h(th_)))
        if ti is None:
            continue
        sym = Symbol9j.from_twice(ta, tb, tc, td, te, tf, tg, th_, ti)
        if sym.is_valid():
            return sym


def random_valid_chain(rng, n: int, tmax: int = 20) -> Symbol3nj:
    """A valid first-kind 3nj symbol built triad by triad."""
    h = HalfInt.from_twice
    while True:
        tj = [rng.randrange(0, tmax + 1)]
        tl = []
        ok = True
        for _ in range(n - 1):
            tli = rng.randrange(0, tmax + 1)
            tnext = _sample_coupled(rng, _window(h(tj[-1]), h(tli)), (0, 2 * tmax))
            if tnext is None:
                ok = False
                break
            tl.append(tli)
            tj.append(tnext)
        if not ok:
            continue
        # close the j-chain into k1 via l_n, then build the k-chain back
        tln = rng.randrange(0, tmax + 1)
        tk1 = _sample_coupled(rng, _window(h(tj[-1]), h(tln)), (0, 2 * tmax))
        if tk1 is None:
            continue
        tl.append(tln)
        tk = [tk1]
        for i in range(n - 1):
            tki = _sample_coupled(rng, _window(h(tk[-1]), h(tl[i])), (0, 2 * tmax))
            if tki is None:
                ok = False
                break
            tk.append(tki)
        if not ok:
            continue
        sym = Symbol3nj(tuple(map(h, tj)), tuple(map(h, tk)), tuple(map(h, tl)))
        if sym.is_valid():
            return sym
