"""Deterministic primality testing and next-prime stepping for 64-bit sizes."""

import math

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Witness set certifying Miller-Rabin for every n < 2^64 (Sinclair's base set).
_MR_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)


def _witness_says_composite(a: int, s: int, d: int, n: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    """Exact primality of n, deterministic for all n < 2^64."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        a %= n
        if a != 0 and _witness_says_composite(a, s, d, n):
            return False
    return True


def nextprime(x) -> int:
    """Smallest prime strictly greater than x.

    x may be any real or rational number >= 1, e.g. nextprime(3.5) == 5 and
    nextprime(2) == 3.
    """
    if x < 1:
        raise ValueError("nextprime requires x >= 1")
    n = math.floor(x) + 1
    if n <= 2:
        return 2
    if n % 2 == 0:
        n += 1
    # Prime gaps are tiny at any size this package reaches, so odd stepping
    # beats anything fancier.
    while not is_prime(n):
        n += 2
    return n
