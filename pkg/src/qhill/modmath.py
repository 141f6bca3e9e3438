"""Modular integer arithmetic: powers, inverses, primality, primitive roots."""

from collections import Counter

from .errors import InvalidArgument, InvalidModulus, NotInvertible

# Residue products must fit in an unsigned 64-bit word.
MAX_MODULUS = 2**31

# First twelve primes: a deterministic Miller-Rabin witness set for n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _check_modulus(m):
    if m < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {m}")


def canonical(x, m):
    """Reduce ``x`` into [0, m)."""
    _check_modulus(m)
    return x % m


def mod_pow(base, exp, m):
    """``base**exp mod m`` by square-and-multiply."""
    _check_modulus(m)
    if exp < 0:
        raise InvalidArgument(f"exponent must be non-negative, got {exp}")
    result = 1 % m
    base %= m
    while exp:
        if exp & 1:
            result = result * base % m
        base = base * base % m
        exp >>= 1
    return result


def egcd(a, b):
    """Return (g, x, y) with a*x + b*y == g == gcd(a, b)."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def mod_inv(a, m):
    _check_modulus(m)
    g, x, _ = egcd(a % m, m)
    if g != 1:
        raise NotInvertible(f"{a} has no inverse mod {m} (gcd {g})")
    return x % m


def is_prime(n):
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime_modulus(p):
    """Validate ``p`` as a usable prime modulus and return it."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise InvalidArgument(f"prime must be an integer, got {p!r}")
    if not 2 <= p < MAX_MODULUS:
        raise InvalidModulus(f"prime must satisfy 2 <= p < 2^31, got {p}")
    if not is_prime(p):
        raise InvalidModulus(f"{p} is not prime")
    return p


def factorize(n):
    """Prime factorization by trial division, as a Counter {prime: multiplicity}."""
    if n < 1:
        raise InvalidArgument(f"cannot factorize {n}")
    factors = Counter()
    while n % 2 == 0:
        factors[2] += 1
        n //= 2
    q = 3
    while q * q <= n:
        while n % q == 0:
            factors[q] += 1
            n //= q
        q += 2
    if n > 1:
        factors[n] += 1
    return factors


def is_primitive_root(alpha, p):
    """True iff ``alpha`` generates the multiplicative group mod prime ``p``."""
    if alpha % p == 0:
        raise InvalidArgument("0 is never a primitive root")
    order = p - 1
    return all(mod_pow(alpha, order // q, p) != 1 for q in factorize(order))


def find_primitive_root(p):
    """Smallest primitive root of the prime ``p`` (1 for p = 2)."""
    for alpha in range(1, p):
        if is_primitive_root(alpha, p):
            return alpha
    raise InvalidArgument(f"{p} has no primitive root; is it prime?")
