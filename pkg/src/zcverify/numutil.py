"""Integer helpers: factorization, totients, divisors, unit lifts."""

from __future__ import annotations

from functools import lru_cache
from math import gcd


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, multiplicity), ...), p ascending."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(p for p, _ in factorize(n))


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n, ascending."""
    out = [1]
    for p, k in factorize(n):
        out = [d * p**i for d in out for i in range(k + 1)]
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out


@lru_cache(maxsize=None)
def moebius(n: int) -> int:
    m = 1
    for _, k in factorize(n):
        if k > 1:
            return 0
        m = -m
    return m


def is_prime_power(n: int) -> bool:
    return n > 1 and len(factorize(n)) == 1


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def pi_part(n: int, primes) -> int:
    """Product of the p-parts of n over p in `primes`."""
    out = 1
    for p in set(primes):
        out *= p_part(n, p)
    return out


def crt(r1: int, m1: int, r2: int, m2: int) -> int:
    """Solve x = r1 (mod m1), x = r2 (mod m2) for coprime moduli."""
    if gcd(m1, m2) != 1:
        raise ValueError("moduli must be coprime")
    inv = pow(m1, -1, m2) if m2 > 1 else 0
    return (r1 + m1 * ((r2 - r1) * inv % m2)) % (m1 * m2)


def unit_lift(j: int, m: int, big: int) -> int:
    """A unit modulo `big` congruent to j modulo m (requires m | big, gcd(j, m) = 1).

    Used to extend a Galois automorphism of Q(zeta_m) to a larger cyclotomic
    field: the lift fixes the part of `big` coprime to m.
    """
    if big % m:
        raise ValueError("m must divide big")
    if gcd(j, m) != 1:
        raise ValueError("j must be a unit mod m")
    mprimes = prime_divisors(m)
    m1 = pi_part(big, mprimes)
    c = big // m1
    x = crt(j % m1, m1, 1 % c if c > 1 else 0, c)
    assert x % m == j % m and gcd(x, big) == 1
    return x
