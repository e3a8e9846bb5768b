"""Exact arbitrary-precision integer utilities.

Valuations, radicals, quadratic residues, square testing, prime generation
and factorisation of smooth inputs.  Everything works on plain Python ints,
is deterministic and pure, so all functions are safe under parallel use.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "Valuation",
    "PrimeSet",
    "valuation",
    "radical_excluding",
    "legendre",
    "is_perfect_square",
    "primes_up_to",
    "squarefree_check",
    "is_prime",
    "factorize",
    "prime_factors",
    "squarefree_core",
    "sqrt_mod",
    "iter_primes",
]

# Deterministic Miller-Rabin witness set for n < 2^64.
_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# Fixed extra rounds above 2^64 (probabilistic, error < 4^-24).
_MR_EXTRA_ROUNDS = 24

_SQUARES_MOD_256 = frozenset((i * i) & 255 for i in range(128))


@dataclass(frozen=True)
class Valuation:
    """Exponent of a prime in an integer plus the prime-free cofactor.

    input = ell**exponent * cofactor with ell not dividing cofactor; the
    sign of the input is carried by the cofactor.
    """

    exponent: int
    cofactor: int


@dataclass(frozen=True)
class PrimeSet:
    """Strictly increasing primes together with the bound that generated them."""

    primes: tuple[int, ...]
    bound: int

    def __iter__(self):
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)


def _miller_rabin(n: int, base: int) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


@lru_cache(maxsize=1 << 16)
def is_prime(n: int) -> bool:
    """Deterministic below 2^64 (fixed strong-pseudoprime bases), probabilistic
    with a fixed number of rounds above."""
    if n < 2:
        return False
    for p in _MR_BASES_64:
        if n % p == 0:
            return n == p
    if not all(_miller_rabin(n, b) for b in _MR_BASES_64):
        return False
    if n < 1 << 64:
        return True
    rng = random.Random(n)
    return all(_miller_rabin(n, rng.randrange(2, n - 1)) for _ in range(_MR_EXTRA_ROUNDS))


def valuation(n: int, ell: int) -> Valuation:
    """ell-adic valuation of n != 0; the cofactor keeps the sign of n."""
    if n == 0:
        raise ValueError("valuation undefined at zero")
    if not is_prime(ell):
        raise ValueError(f"valuation requires a prime, got {ell}")
    e = 0
    while n % ell == 0:
        n //= ell
        e += 1
    return Valuation(e, n)


def primes_up_to(bound: int) -> PrimeSet:
    """All primes <= bound, ascending; empty set (not an error) for bound < 2."""
    if bound < 2:
        return PrimeSet((), bound)
    sieve = bytearray(b"\x01") * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            start = p * p
            sieve[start : bound + 1 : p] = b"\x00" * ((bound - start) // p + 1)
    return PrimeSet(tuple(i for i in range(bound + 1) if sieve[i]), bound)


def iter_primes(bound: int, start: int = 2):
    """Yield primes in [start, bound] in ascending order, sieving in segments
    so that searches which stop early stay cheap."""
    lo = max(start, 2)
    seg = 1 << 14
    while lo <= bound:
        hi = min(bound, lo + seg - 1)
        width = hi - lo + 1
        sieve = bytearray(b"\x01") * width
        for p in primes_up_to(math.isqrt(hi)).primes:
            first = max(p * p, ((lo + p - 1) // p) * p)
            if first > hi:
                continue
            sieve[first - lo : width : p] = b"\x00" * ((hi - first) // p + 1)
        for i in range(width):
            if sieve[i] and lo + i >= 2:
                yield lo + i
        lo = hi + 1
        seg = min(seg * 2, 1 << 20)


def _pollard_brent(n: int) -> int:
    """One nontrivial factor of composite n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation of |n| as {prime: exponent}; n must be nonzero.

    Trial division by small primes first, then Miller-Rabin + Pollard-Brent.
    Intended for the smooth numbers this package produces, not for hard
    semiprimes.
    """
    if n == 0:
        raise ValueError("cannot factor zero")
    n = abs(n)
    out: dict[int, int] = {}
    for p in primes_up_to(10_000).primes:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack.extend((r, r))
            continue
        d = _pollard_brent(m)
        stack.extend((d, m // d))
    return out


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime divisors of |n|, ascending."""
    return tuple(sorted(factorize(n)))


def radical_excluding(n: int, exclude=()) -> int:
    """Product of the distinct primes dividing n that are not in exclude (1 if none)."""
    if n == 0:
        raise ValueError("radical undefined at zero")
    n = abs(n)
    excluded = set(exclude)
    for p in excluded:
        while n % p == 0:
            n //= p
    if n == 1:
        return 1
    return math.prod(p for p in factorize(n) if p not in excluded)


def squarefree_check(n: int) -> bool:
    """True iff no prime square divides n (n >= 1)."""
    if n < 1:
        raise ValueError("squarefree test defined for positive integers")
    if n < 4:
        return True
    return all(e == 1 for e in factorize(n).values())


def squarefree_core(n: int) -> int:
    """The squarefree integer equivalent to n modulo rational squares (sign kept)."""
    if n == 0:
        raise ValueError("squarefree core undefined at zero")
    sign = -1 if n < 0 else 1
    return sign * math.prod(p for p, e in factorize(n).items() if e % 2)


def legendre(a: int, ell: int) -> int:
    """Legendre symbol (a | ell) for an odd prime ell, via Euler's criterion."""
    if ell == 2 or not is_prime(ell):
        raise ValueError(f"Legendre symbol requires an odd prime modulus, got {ell}")
    r = pow(a % ell, (ell - 1) // 2, ell)
    return -1 if r == ell - 1 else r


def is_perfect_square(n: int):
    """The nonnegative root when n is a perfect square, else None.

    Exact integer square root only; the mod-256 table just rejects most
    non-squares before the isqrt call.
    """
    if n < 0:
        return None
    if (n & 255) not in _SQUARES_MOD_256:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def sqrt_mod(a: int, ell: int) -> int | None:
    """A square root of a modulo the odd prime ell (Tonelli-Shanks), or None."""
    if ell == 2 or not is_prime(ell):
        raise ValueError(f"sqrt_mod requires an odd prime modulus, got {ell}")
    a %= ell
    if a == 0:
        return 0
    if legendre(a, ell) != 1:
        return None
    if ell % 4 == 3:
        return pow(a, (ell + 1) // 4, ell)
    # Write ell-1 = s * 2^e with s odd.
    s, e = ell - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    n = 2
    while legendre(n, ell) != -1:
        n += 1
    x = pow(a, (s + 1) // 2, ell)
    b = pow(a, s, ell)
    g = pow(n, s, ell)
    r = e
    while True:
        t, m = b, 0
        while t != 1:
            t = t * t % ell
            m += 1
        if m == 0:
            return x
        gs = pow(g, 1 << (r - m - 1), ell)
        g = gs * gs % ell
        x = x * gs % ell
        b = b * g % ell
        r = m
