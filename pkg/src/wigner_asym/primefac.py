"""Prime-factorized factorial arithmetic.

Quotients of factorial products are assembled as prime-exponent vectors
(Legendre's formula), so the only big integers ever materialized are the
reduced numerator and denominator of the final result.  This is what keeps
exact 6j evaluation viable at spins of several hundred.
"""

from __future__ import annotations

import threading
from fractions import Fraction


def _sieve(limit: int) -> list:
    """Primes <= limit by Eratosthenes."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    p = 2
    while p * p <= limit:
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
        p += 1
    return [i for i, f in enumerate(flags) if f]


def prime_exponent_in_factorial(n: int, p: int) -> int:
    """Exponent of the prime p in n! (Legendre's formula)."""
    e = 0
    q = n // p
    while q:
        e += q
        q //= p
    return e


class FactorialLedger:
    """Extendable table of n! as prime-exponent vectors.

    Reads never block: the prime table is grown by building a fresh list and
    publishing it with a single reference swap under ``_grow_lock``, so
    concurrent symbol evaluations only ever see a complete table.
    """

    def __init__(self, initial_limit: int = 256):
        self._grow_lock = threading.Lock()
        self._limit = max(4, initial_limit)
        self._primes = _sieve(self._limit)

    def primes_upto(self, n: int) -> list:
        if n > self._limit:
            with self._grow_lock:
                if n > self._limit:
                    new_limit = max(n, 2 * self._limit)
                    self._primes = _sieve(new_limit)   # grow, then publish
                    self._limit = new_limit
        primes = self._primes
        # The published list may extend beyond n; slice by bisection.
        lo, hi = 0, len(primes)
        while lo < hi:
            mid = (lo + hi) // 2
            if primes[mid] <= n:
                lo = mid + 1
            else:
                hi = mid
        return primes[:lo]

    def factorial_exponents(self, n: int) -> dict:
        """{prime: exponent} for n!."""
        if n < 0:
            raise ValueError("factorial of a negative number")
        return {p: prime_exponent_in_factorial(n, p) for p in self.primes_upto(n)}

    def combined_exponents(self, terms) -> dict:
        """Exponent vector of prod_i (n_i!)**c_i for terms = [(n_i, c_i)]."""
        n_max = 0
        for n, _ in terms:
            if n < 0:
                raise ValueError("factorial of a negative number")
            n_max = max(n_max, n)
        out = {}
        for p in self.primes_upto(n_max):
            e = 0
            for n, c in terms:
                if n >= p:
                    e += c * prime_exponent_in_factorial(n, p)
            if e:
                out[p] = e
        return out

    def factorial(self, n: int) -> int:
        """n! reconstructed from its exponent vector."""
        return _pow_product(self.factorial_exponents(n))

    def factorial_quotient(self, terms) -> Fraction:
        """Exact value of prod_i (n_i!)**c_i as a Fraction in lowest terms."""
        num, den = 1, 1
        for p, e in self.combined_exponents(terms).items():
            if e > 0:
                num *= p ** e
            else:
                den *= p ** (-e)
        return Fraction(num, den)

    def sqrt_factorial_quotient(self, terms):
        """Split sqrt(prod_i (n_i!)**c_i) into (rational, squarefree radicand).

        Returns (r, q) with the exact value equal to r*sqrt(q), r a positive
        Fraction and q a squarefree positive int.
        """
        num, den = 1, 1
        rad = 1
        for p, e in self.combined_exponents(terms).items():
            half, odd = divmod(e, 2)   # divmod keeps odd in {0, 1} for e < 0
            if half > 0:
                num *= p ** half
            elif half < 0:
                den *= p ** (-half)
            if odd:
                rad *= p
        return Fraction(num, den), rad


def _pow_product(exponents: dict) -> int:
    out = 1
    for p, e in exponents.items():
        out *= p ** e
    return out


DEFAULT_LEDGER = FactorialLedger()
