"""Exact integer combinatorics: binomial coefficients and their factorizations.

Binomial coefficients are the oracle every certified bound check compares
against, so they are always exact Python integers.  Prime factorizations of
``C(n, k)`` (Legendre's formula on the factorials) feed the exact symbolic
layer in :mod:`binenv.loglinear`: every prime factor of ``C(n, k)`` is at
most ``n``, which keeps the factored representation small.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .errors import DomainError
from .intervals import Interval, log2_int


def binomial(n: int, k: int) -> int:
    """Exact ``C(n, k)``; raises :class:`DomainError` unless ``0 <= k <= n``."""
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"binomial requires 0 <= k <= n, got n={n}, k={k}")
    return math.comb(n, k)


def log2_binomial(n: int, k: int, precision: int) -> Interval:
    """Enclosure of ``log2 C(n, k)`` of width <= 2**(-precision).

    Point interval (exact) when ``C(n, k)`` is a power of two.
    """
    return log2_int(binomial(n, k), precision)


@lru_cache(maxsize=None)
def primes_up_to(n: int) -> tuple[int, ...]:
    """All primes <= n (simple sieve)."""
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p:: p] = bytearray(len(range(p * p, n + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _prime_exponent_in_factorial(n: int, p: int) -> int:
    """Exponent of prime p in n! (Legendre)."""
    e = 0
    q = p
    while q <= n:
        e += n // q
        q *= p
    return e


def binomial_factorization(n: int, k: int) -> dict[int, int]:
    """Prime factorization of ``C(n, k)`` as ``{prime: exponent}`` (exponents > 0)."""
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"binomial requires 0 <= k <= n, got n={n}, k={k}")
    out: dict[int, int] = {}
    for p in primes_up_to(n):
        e = (_prime_exponent_in_factorial(n, p)
             - _prime_exponent_in_factorial(k, p)
             - _prime_exponent_in_factorial(n - k, p))
        if e:
            out[p] = e
    return out


def factorize(m: int) -> dict[int, int]:
    """Trial-division factorization of a positive integer."""
    if m <= 0:
        raise DomainError(f"factorize requires a positive integer, got {m}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out
