import math

import pytest
from hypothesis import given, strategies as st

from oracles import multiplicative_order, primes_upto
from qhill.errors import InvalidArgument, InvalidModulus, NotInvertible
from qhill.modmath import (
    check_prime_modulus,
    factorize,
    find_primitive_root,
    is_prime,
    is_primitive_root,
    mod_inv,
    mod_pow,
)


@pytest.mark.parametrize("base, exp, m, expected", [
    (5, 13, 37, 13),
    (13, 22, 37, 3),
    (5, 22, 37, 4),
    (4, 13, 37, 3),
    (7, 0, 37, 1),
    (0, 0, 2, 1),
])
def test_mod_pow_examples(base, exp, m, expected):
    assert mod_pow(base, exp, m) == expected


def test_mod_pow_rejects_small_modulus():
    with pytest.raises(InvalidModulus):
        mod_pow(1, 1, 1)


@given(st.integers(2, 1000).flatmap(lambda m: st.tuples(st.integers(0, m - 1), st.integers(0, 1000), st.just(m))))
def test_mod_pow_matches_repeated_multiplication(args):
    a, e, m = args
    acc = 1 % m
    for _ in range(e):
        acc = acc * a % m
    assert mod_pow(a, e, m) == acc


def test_mod_inv_examples():
    assert mod_inv(1, 37) == 1
    assert mod_inv(2, 37) == 19
    assert 2 * 19 % 37 == 1
    with pytest.raises(NotInvertible):
        mod_inv(6, 12)


def test_mod_inv_all_units_up_to_500():
    for m in range(2, 501):
        for a in range(1, m):
            if math.gcd(a, m) == 1:
                assert a * mod_inv(a, m) % m == 1


def test_is_prime_examples():
    assert is_prime(37)
    assert not is_prime(1)
    assert not is_prime(91)
    assert not is_prime(0)


def test_is_prime_matches_sieve():
    primes = set(primes_upto(20000))
    assert all(is_prime(n) == (n in primes) for n in range(20001))


@pytest.mark.parametrize("n, expected", [
    (2**31 - 1, True),
    (2**61 - 1, True),
    (3215031751, False),  # strong pseudoprime to bases 2, 3, 5, 7
    (3825123056546413051, False),  # strong pseudoprime to the first nine prime bases
    ((2**31 - 1) ** 2, False),
    ((2**31 - 1) * 1000003, False),
])
def test_is_prime_large(n, expected):
    assert is_prime(n) is expected


def test_factorize_examples():
    assert factorize(36) == {2: 2, 3: 2}
    assert factorize(1) == {}
    assert factorize(37) == {37: 1}


def _recompose(factors):
    return math.prod(q**e for q, e in factors.items())


def test_factorize_recomposes_exhaustive_small():
    for n in range(1, 20001):
        f = factorize(n)
        assert _recompose(f) == n
        assert all(is_prime(q) for q in f)


@given(st.integers(1, 10**6))
def test_factorize_recomposes(n):
    f = factorize(n)
    assert _recompose(f) == n
    assert all(is_prime(q) for q in f)


def test_primitive_root_examples():
    assert is_primitive_root(5, 37)
    assert not is_primitive_root(1, 37)
    assert not is_primitive_root(36, 37)
    with pytest.raises(InvalidArgument):
        is_primitive_root(0, 37)
    assert find_primitive_root(37) == 2
    assert find_primitive_root(2) == 1
    assert find_primitive_root(3) == 2


def test_primitive_roots_generate_the_group():
    for p in primes_upto(1000):
        alpha = find_primitive_root(p)
        assert len({pow(alpha, i, p) for i in range(p - 1)}) == p - 1
        # smallest: every smaller candidate has a shorter order
        assert all(multiplicative_order(a, p) < p - 1 for a in range(1, alpha))


def test_check_prime_modulus():
    assert check_prime_modulus(37) == 37
    for bad in (1, 36, 2**31, 2**31 + 11):
        with pytest.raises(InvalidModulus):
            check_prime_modulus(bad)
