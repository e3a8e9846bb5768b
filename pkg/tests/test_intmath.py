import random

import pytest

from fermat22n.intmath import (
    factorize,
    is_perfect_square,
    is_prime,
    legendre,
    primes_up_to,
    radical_excluding,
    sqrt_mod,
    squarefree_check,
    squarefree_core,
    valuation,
)
from oracles import legendre_by_enumeration


def test_valuation_examples():
    v = valuation(48, 2)
    assert (v.exponent, v.cofactor) == (4, 3)
    v = valuation(7, 5)
    assert (v.exponent, v.cofactor) == (0, 7)
    v = valuation(-343, 7)
    assert (v.exponent, v.cofactor) == (3, -1)


def test_valuation_errors():
    with pytest.raises(ValueError, match="zero"):
        valuation(0, 3)
    with pytest.raises(ValueError):
        valuation(12, 6)


def test_valuation_round_trip_random():
    rng = random.Random(12345)
    primes = primes_up_to(200).primes
    for _ in range(10_000):
        n = rng.randint(-10**9, 10**9) or 1
        ell = rng.choice(primes)
        v = valuation(n, ell)
        assert ell**v.exponent * v.cofactor == n
        assert v.cofactor % ell != 0


def test_radical_excluding_examples():
    assert radical_excluding(360, {2, 3}) == 5
    assert radical_excluding(2, {2}) == 1
    assert radical_excluding(-6, set()) == 6
    with pytest.raises(ValueError):
        radical_excluding(0, set())


def test_radical_divides_and_coprime():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(1, 10**6)
        s = set(rng.sample(primes_up_to(50).primes, 3))
        r = radical_excluding(n, s)
        assert n % r == 0
        assert all(r % p != 0 for p in s)


def test_legendre_examples():
    assert legendre(2, 7) == 1
    assert legendre(3, 5) == -1
    assert legendre(14, 7) == 0


def test_legendre_errors():
    with pytest.raises(ValueError):
        legendre(3, 2)
    with pytest.raises(ValueError):
        legendre(3, 15)


def test_legendre_matches_enumeration_up_to_100():
    for ell in primes_up_to(100).primes:
        if ell == 2:
            continue
        for a in range(ell):
            assert legendre(a, ell) == legendre_by_enumeration(a, ell)


def test_legendre_multiplicative():
    odd_primes = [p for p in primes_up_to(100).primes if p != 2]
    for ell in odd_primes:
        if ell <= 31:  # exhaustive over a full period
            pairs = ((a, b) for a in range(ell) for b in range(ell))
        else:
            rng = random.Random(ell)
            pairs = ((rng.randint(-500, 500), rng.randint(-500, 500)) for _ in range(200))
        for a, b in pairs:
            assert legendre(a * b, ell) == legendre(a, ell) * legendre(b, ell)


def test_is_perfect_square():
    assert is_perfect_square(9) == 3
    assert is_perfect_square(8) is None
    assert is_perfect_square(0) == 0
    assert is_perfect_square(-4) is None
    big = (3**97 + 1) ** 2
    assert is_perfect_square(big) == 3**97 + 1
    assert is_perfect_square(big + 1) is None


def test_primes_up_to():
    assert primes_up_to(10).primes == (2, 3, 5, 7)
    assert primes_up_to(2).primes == (2,)
    ps = primes_up_to(97)
    assert len(ps) == 25 and ps.primes[-1] == 97
    assert primes_up_to(1).primes == ()


def test_primes_are_increasing_and_prime():
    ps = primes_up_to(2000).primes
    assert all(a < b for a, b in zip(ps, ps[1:]))
    assert all(is_prime(p) for p in ps)


def test_squarefree_check():
    assert squarefree_check(15)
    assert not squarefree_check(63)
    assert squarefree_check(1)
    with pytest.raises(ValueError):
        squarefree_check(0)


def test_factorize_and_core():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(-7) == {7: 1}
    assert squarefree_core(12) == 3
    assert squarefree_core(-18) == -2
    assert squarefree_core(49) == 1


def test_is_prime_boundaries():
    assert not is_prime(1)
    assert is_prime(2) and is_prime(3)
    assert not is_prime(561)  # Carmichael
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**19 - 1))
    assert is_prime(2**89 - 1)  # above the deterministic range


def test_sqrt_mod():
    for ell in (3, 5, 7, 11, 13, 17, 97, 101):
        for a in range(ell):
            r = sqrt_mod(a, ell)
            if legendre_by_enumeration(a, ell) >= 0:
                assert r is not None and r * r % ell == a % ell
            else:
                assert r is None
