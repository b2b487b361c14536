"""Arithmetic and element classification in Z_n.

Residues are plain Python ints kept in ``[0, n)``.  A :class:`RingSpec`
carries the modulus together with its factorization and a shape tag, and
every function here accepts either a ``RingSpec`` or a bare modulus.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Union

from .errors import InvalidModulus, NotInvertible, ShapeMismatch


@dataclass(frozen=True)
class PrimePower:
    p: int
    l: int


@dataclass(frozen=True)
class TwoPrimes:
    p1: int
    p2: int


@dataclass(frozen=True)
class General:
    pass


Shape = Union[PrimePower, TwoPrimes, General]


@dataclass(frozen=True)
class RingSpec:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise InvalidModulus(f"bad factorization {self.factors}")
            last = p
            prod *= p**e
        if prod != self.n:
            raise InvalidModulus(f"factors {self.factors} do not multiply to {self.n}")

    @property
    def shape(self) -> Shape:
        if len(self.factors) == 1:
            p, l = self.factors[0]
            return PrimePower(p, l)
        if len(self.factors) == 2 and all(e == 1 for _, e in self.factors):
            return TwoPrimes(self.factors[0][0], self.factors[1][0])
        return General()

    @property
    def phi(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e - p ** (e - 1)
        return out

    def __str__(self):
        return f"Z_{self.n}"


RingLike = Union[RingSpec, int]


def modulus(ring: RingLike) -> int:
    return ring.n if isinstance(ring, RingSpec) else int(ring)


def as_ring(ring: RingLike) -> RingSpec:
    return ring if isinstance(ring, RingSpec) else factorize(ring)


@lru_cache(maxsize=None)
def factorize(n: int) -> RingSpec:
    """Trial-division factorization of ``n >= 2``."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise InvalidModulus(f"modulus must be an integer >= 2, got {n!r}")
    factors = []
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
        p += 1
    if rest > 1:
        factors.append((rest, 1))
    return RingSpec(n, tuple(factors))


def is_prime(p: int) -> bool:
    return p >= 2 and factorize(p).factors == ((p, 1),)


def is_unit(a: int, ring: RingLike) -> bool:
    n = modulus(ring)
    return gcd(a % n, n) == 1


def units(ring: RingLike) -> tuple[int, ...]:
    n = modulus(ring)
    return tuple(a for a in range(1, n) if gcd(a, n) == 1)


def zero_divisors(ring: RingLike) -> tuple[int, ...]:
    """Nonzero non-units of Z_n, ascending."""
    n = modulus(ring)
    return tuple(a for a in range(1, n) if gcd(a, n) != 1)


def annihilator_generator(a: int, ring: RingLike) -> int:
    """Generator ``n / gcd(a, n)`` (reduced mod n) of ``{x : x*a = 0}``."""
    n = modulus(ring)
    return (n // gcd(a % n, n)) % n


def invert(u: int, ring: RingLike) -> int:
    n = modulus(ring)
    try:
        return pow(u % n, -1, n)
    except ValueError:
        raise NotInvertible(f"{u} is not a unit of Z_{n}") from None


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def solve_linear(a: int, b: int, n: int) -> int | None:
    """Least ``x`` in ``[0, n)`` with ``a*x = b (mod n)``, or None."""
    a %= n
    b %= n
    g = gcd(a, n)
    if b % g:
        return None
    m = n // g
    if m == 1:
        return 0
    return (b // g) * pow(a // g, -1, m) % m


def unit_normalizer(a: int, ring: RingLike) -> int:
    """A unit ``u`` with ``u*a = gcd(a, n) (mod n)``.

    Over Z_n two elements generate the same ideal iff they are associates,
    so every residue can be scaled by a unit onto the divisor of n that
    generates its ideal.
    """
    n = modulus(ring)
    a %= n
    g = gcd(a, n)
    if g == n:
        return 1
    m = n // g
    u0 = pow(a // g, -1, m) if m > 1 else 0
    u = u0
    while gcd(u, n) != 1:
        u += m
    return u % n


def split_coefficients(ring: RingLike) -> tuple[int, int]:
    """Lexicographically least ``(l1, l2)`` with ``l1*p1^2 - l2*p2^2 = 1 (mod p1*p2)``.

    ``l1*p1 + l2*p2`` is then the inverse of ``p1 - p2``.
    """
    ring = as_ring(ring)
    shape = ring.shape
    if not isinstance(shape, TwoPrimes):
        raise ShapeMismatch(f"{ring} is not a product of two distinct primes")
    n = ring.n
    a, b = shape.p1**2 % n, shape.p2**2 % n
    for l1 in range(n):
        l2 = solve_linear(b, l1 * a - 1, n)
        if l2 is not None:
            return l1, l2
    raise AssertionError("p1^2 and p2^2 are coprime; a solution must exist")


def prime_power_decomposition(d: int, ring: RingLike) -> tuple[int, int]:
    """Write a nonzero residue of Z_{p^l} as ``p^r * u``.

    ``u`` is ``d // p^r`` which lies in ``[1, p^(l-r))`` and is prime to p.
    Units come back with ``r == 0``.
    """
    ring = as_ring(ring)
    shape = ring.shape
    if not isinstance(shape, PrimePower):
        raise ShapeMismatch(f"{ring} is not a prime power")
    d %= ring.n
    if d == 0:
        raise ValueError("zero has no decomposition p^r * u")
    r = 0
    while d % shape.p**(r + 1) == 0:
        r += 1
    return r, d // shape.p**r


def divisors(n: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, n + 1) if n % d == 0)


def proper_divisors(n: int) -> tuple[int, ...]:
    """Divisors strictly between 1 and n: the generators of proper nonzero ideals."""
    return tuple(d for d in divisors(n) if 1 < d < n)


def additive_subgroup(g: int, ring: RingLike) -> frozenset[int]:
    n = modulus(ring)
    return frozenset(g * t % n for t in range(n))
