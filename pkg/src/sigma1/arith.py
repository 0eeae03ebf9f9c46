"""Divisor sums, abundance classification, and the sigma(n) = 2n + 11 search."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ValidationError

SEARCH_LIMIT_MAX = 10**9
SIEVE_BLOCK = 1 << 20


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as strictly increasing (prime, exponent) pairs."""

    pairs: tuple[tuple[int, int], ...]

    def value(self) -> int:
        out = 1
        for p, e in self.pairs:
            out *= p**e
        return out


def factorize(n: int) -> Factorization:
    if n < 1:
        raise ValidationError(f"factorization needs a positive integer, got {n}")
    pairs = []
    remaining = n
    p = 2
    while p * p <= remaining:
        if remaining % p == 0:
            e = 0
            while remaining % p == 0:
                remaining //= p
                e += 1
            pairs.append((p, e))
        p += 1 if p == 2 else 2
    if remaining > 1:
        pairs.append((remaining, 1))
    return Factorization(tuple(pairs))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for p in range(3, math.isqrt(n) + 1, 2):
        if n % p == 0:
            return False
    return True


def divisors(n: int) -> list[int]:
    out = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
    out.sort()
    return out


def divisor_sigma(n: int) -> int:
    """Sum of all divisors of n, via the multiplicative formula."""
    total = 1
    for p, e in factorize(n).pairs:
        total *= (p ** (e + 1) - 1) // (p - 1)
    return total


def sigma1_cyclic(n: int) -> Fraction:
    """sigma(n)/n in lowest terms; equals sigma1 of the cyclic group of order n."""
    return Fraction(divisor_sigma(n), n)


class AbundanceClass(enum.Enum):
    DEFICIENT = "DEFICIENT"
    PERFECT = "PERFECT"
    ABUNDANT = "ABUNDANT"


def abundance_class(n: int) -> AbundanceClass:
    diff = divisor_sigma(n) - 2 * n
    if diff < 0:
        return AbundanceClass.DEFICIENT
    if diff == 0:
        return AbundanceClass.PERFECT
    return AbundanceClass.ABUNDANT


def sigma_sieve(limit: int) -> np.ndarray:
    """sigma(n) for 0 <= n <= limit as an int64 array (index 0 unused)."""
    out = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        out[d::d] += d
    return out


def _sigma_block(lo: int, hi: int) -> np.ndarray:
    """sigma(n) for lo <= n < hi via paired divisors d <= sqrt(n) < n/d."""
    out = np.zeros(hi - lo, dtype=np.int64)
    for d in range(1, math.isqrt(hi - 1) + 1):
        start = max(lo, d * d)
        start += (-start) % d
        if start >= hi:
            continue
        multiples = np.arange(start, hi, d, dtype=np.int64)
        quotients = multiples // d
        keep = quotients >= d
        multiples = multiples[keep]
        quotients = quotients[keep]
        out[multiples - lo] += np.where(quotients > d, d + quotients, d)
    return out


def _square_like_candidates(limit: int) -> list[int]:
    """All n <= limit of the form m*m or 2*m*m, ascending."""
    out = []
    m = 1
    while m * m <= limit:
        out.append(m * m)
        if 2 * m * m <= limit:
            out.append(2 * m * m)
        m += 1
    out.sort()
    return out


def search_open_problem(limit: int, use_prefilter: bool = True) -> list[int]:
    """All n <= limit with sigma(n) = 2n + 11, ascending.

    With the parity prefilter, only n = m^2 or n = 2m^2 are inspected: the
    target value 2n + 11 is odd and sigma(n) is odd exactly for such n.  The
    unfiltered path sieves sigma over blocks.  Both paths recheck every hit by
    trial division.
    """
    if limit < 1:
        raise ValidationError("limit must be positive")
    if limit > SEARCH_LIMIT_MAX:
        raise ValidationError(f"limit must not exceed {SEARCH_LIMIT_MAX}")
    hits = []
    if use_prefilter:
        for n in _square_like_candidates(limit):
            if divisor_sigma(n) == 2 * n + 11:
                hits.append(n)
    else:
        lo = 1
        while lo <= limit:
            hi = min(lo + SIEVE_BLOCK, limit + 1)
            block = _sigma_block(lo, hi)
            targets = 2 * np.arange(lo, hi, dtype=np.int64) + 11
            for offset in np.nonzero(block == targets)[0]:
                hits.append(int(lo + offset))
            lo = hi
    for n in hits:
        if sum(d for d in divisors(n)) != 2 * n + 11:
            raise RuntimeError(f"sieve produced a false hit at n={n}")
    return hits
