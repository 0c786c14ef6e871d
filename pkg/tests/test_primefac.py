import math
import threading
from fractions import Fraction

from wigner_asym.primefac import FactorialLedger, prime_exponent_in_factorial


def test_reconstructed_factorials_match_iterative():
    ledger = FactorialLedger()
    for n in range(0, 2001):
        assert ledger.factorial(n) == math.factorial(n), n


def test_legendre_formula_small_cases():
    # 10! = 2^8 3^4 5^2 7
    assert prime_exponent_in_factorial(10, 2) == 8
    assert prime_exponent_in_factorial(10, 3) == 4
    assert prime_exponent_in_factorial(10, 5) == 2
    assert prime_exponent_in_factorial(10, 7) == 1
    assert prime_exponent_in_factorial(10, 11) == 0


def test_factorial_quotient_exact():
    ledger = FactorialLedger()
    # binomial(300, 137) via the ledger
    got = ledger.factorial_quotient([(300, 1), (137, -1), (163, -1)])
    assert got == Fraction(math.comb(300, 137))
    got = ledger.factorial_quotient([(10, 2), (5, -3)])
    assert got == Fraction(math.factorial(10) ** 2, math.factorial(5) ** 3)


def test_sqrt_factorial_quotient_split():
    ledger = FactorialLedger()
    rat, rad = ledger.sqrt_factorial_quotient([(6, 1)])
    # 720 = 144 * 5
    assert rat == Fraction(12) and rad == 5
    rat, rad = ledger.sqrt_factorial_quotient([(4, -1)])
    # 1/sqrt(24) = (1/12) sqrt(6)
    assert rat == Fraction(1, 12) and rad == 6
    # value check
    value = float(rat) * math.sqrt(rad)
    assert abs(value - 1 / math.sqrt(24)) < 1e-15


def test_prime_growth_is_monotonic_and_threadsafe():
    ledger = FactorialLedger(initial_limit=8)
    results = []

    def worker(n):
        results.append((n, ledger.factorial_quotient([(n, 1), (n - 1, -1)])))

    threads = [threading.Thread(target=worker, args=(n,)) for n in (50, 500, 1500, 997)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for n, value in results:
        assert value == Fraction(n)
    assert ledger.primes_upto(10) == [2, 3, 5, 7]
