"""Explicit column multisets whose codes are minimal.

* :func:`lambda0_prime_power` over Z_{p^l}: unit vectors plus, for each
  coordinate pair i<j, the vectors e_i + u e_j, e_i + d e_j and d e_i + e_j
  (u a unit, d a zero divisor).
* :func:`lambda0_two_primes` over Z_{p1 p2}: the same pair families taken
  with the units and zero divisors of Z_{p1 p2}, plus p1 e_i + p2 e_j and
  p2 e_i + p1 e_j.
* :func:`onedim_naive` and :func:`onedim_gcd` for k = 1 over any Z_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd, prod
from typing import Optional, Sequence

from .code import ColumnMultiset
from .errors import ShapeMismatch
from .linalg import Vec, unit_vector
from .perp import root_words_mod_units
from .ring import (
    PrimePower,
    RingLike,
    TwoPrimes,
    as_ring,
    factorize,
    is_prime,
    proper_divisors,
    units,
    zero_divisors,
)

RECIPES = ("lambda0", "lambda0-bi", "onedim-naive", "onedim-gcd", "root-words-mod-units")


@dataclass(frozen=True)
class ConstructionRecipe:
    name: str
    n: int
    k: int
    predicted_length: int
    provenance: str


def _pair_vector(k: int, i: int, a: int, j: int, b: int) -> Vec:
    out = [0] * k
    out[i] = a
    out[j] = b
    return tuple(out)


def lambda0_length(p: int, l: int, k: int) -> int:
    return k * (k - 1) // 2 * (p**l + p ** (l - 1) - 2) + k


def lambda0_two_primes_length(p1: int, p2: int, k: int) -> int:
    return k * (k - 1) // 2 * (p1 * p2 + p1 + p2 - 1) + k


def onedim_gcd_length(n: int) -> int:
    factors = factorize(n).factors
    if len(factors) == 1:
        return factors[0][1]
    return sum(e for _, e in factors) + 1


def _check_prime(p: int, label: str = "p"):
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{label}={p!r} is not a prime")


def lambda0_prime_power(p: int, l: int, k: int) -> ColumnMultiset:
    _check_prime(p)
    if l < 1 or k < 1:
        raise ValueError(f"need l >= 1 and k >= 1, got l={l}, k={k}")
    n = p**l
    if k == 1:
        # the pair families are empty; a 1-dimensional code needs the ideal chain
        return onedim_gcd(n)
    us, ds = units(n), zero_divisors(n)
    pairs = list(combinations(range(k), 2))
    fam1 = [unit_vector(i, k) for i in range(k)]
    fam2 = [_pair_vector(k, i, 1, j, u) for i, j in pairs for u in us]
    fam3 = [_pair_vector(k, i, 1, j, d) for i, j in pairs for d in ds]
    fam4 = [_pair_vector(k, i, d, j, 1) for i, j in pairs for d in ds]
    per_pair = len(us) + 2 * len(ds)
    assert per_pair == p**l + p ** (l - 1) - 2
    cols = fam1 + fam2 + fam3 + fam4
    assert len(cols) == lambda0_length(p, l, k)
    return ColumnMultiset(factorize(n), k, tuple(cols))


def lambda0_two_primes(p1: int, p2: int, k: int) -> ColumnMultiset:
    _check_prime(p1, "p1")
    _check_prime(p2, "p2")
    if p1 == p2:
        raise ValueError("p1 and p2 must be distinct")
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    p1, p2 = min(p1, p2), max(p1, p2)
    n = p1 * p2
    us, ds = units(n), zero_divisors(n)
    pairs = list(combinations(range(k), 2))
    fam1 = [unit_vector(i, k) for i in range(k)]
    fam2 = [_pair_vector(k, i, 1, j, u) for i, j in pairs for u in us]
    fam3 = [_pair_vector(k, i, 1, j, d) for i, j in pairs for d in ds]
    fam4 = [_pair_vector(k, i, d, j, 1) for i, j in pairs for d in ds]
    fam5 = [_pair_vector(k, i, p1, j, p2) for i, j in pairs]
    fam6 = [_pair_vector(k, i, p2, j, p1) for i, j in pairs]
    assert len(us) + 2 * len(ds) + 2 == p1 * p2 + p1 + p2 - 1
    cols = fam1 + fam2 + fam3 + fam4 + fam5 + fam6
    assert len(cols) == lambda0_two_primes_length(p1, p2, k)
    return ColumnMultiset(factorize(n), k, tuple(cols))


def onedim_naive(ring: RingLike) -> ColumnMultiset:
    """The unit 1 followed by one generator (the divisor itself) per proper ideal."""
    ring = as_ring(ring)
    cols = [(1,)] + [(d,) for d in proper_divisors(ring.n)]
    return ColumnMultiset(ring, 1, tuple(cols))


def gcd_families(n: int) -> list[list[int]]:
    """For n = prod p_i^a_i, family i is ``{p_i^t * n / p_i^a_i : 0 <= t < a_i}``."""
    out = []
    for p, a in factorize(n).factors:
        rest = n // p**a
        out.append([p**t * rest for t in range(a)])
    return out


def onedim_gcd(ring: RingLike) -> ColumnMultiset:
    """The unit 1 followed by the gcd families, duplicates dropped.

    For a prime power the single family already starts with p^0 = 1, so the
    result is ``1, p, ..., p^(l-1)`` of length l.
    """
    ring = as_ring(ring)
    values = [1]
    for fam in gcd_families(ring.n):
        values.extend(fam)
    values = list(dict.fromkeys(values))
    assert len(values) == onedim_gcd_length(ring.n)
    return ColumnMultiset(ring, 1, tuple((x,) for x in values))


def verify_gcd_coverage(ring: RingLike, generators: Sequence[int]) -> tuple[bool, dict[int, Optional[tuple[int, ...]]]]:
    """For each proper divisor D of n, a smallest subset S with gcd(S + {n}) = D.

    Returns ``(all covered, {D: subset or None})``.  Only multiples of D can
    take part, and if any subset works then so does the set of all multiples,
    so the search stays inside that set.
    """
    n = as_ring(ring).n
    gens = sorted({g % n for g in generators})
    witnesses: dict[int, Optional[tuple[int, ...]]] = {}
    for D in proper_divisors(n):
        pool = [g for g in gens if g % D == 0]
        found = None
        for size in range(1, len(pool) + 1):
            for sub in combinations(pool, size):
                if gcd(n, *sub) == D:
                    found = sub
                    break
            if found:
                break
        witnesses[D] = found
    return all(w is not None for w in witnesses.values()), witnesses


def construct(name: str, n: int, k: int = 1) -> tuple[ConstructionRecipe, ColumnMultiset]:
    """Build a named recipe and return it with its predicted length."""
    ring = factorize(n)
    shape = ring.shape
    if name == "lambda0":
        if not isinstance(shape, PrimePower):
            raise ShapeMismatch(f"lambda0 needs a prime-power modulus, got {n}")
        lam = lambda0_prime_power(shape.p, shape.l, k)
        if k == 1:
            pred, prov = onedim_gcd_length(n), "k=1: ideal chain 1, p, ..., p^(l-1)"
        else:
            pred, prov = lambda0_length(shape.p, shape.l, k), "k(k-1)/2 (p^l + p^(l-1) - 2) + k"
    elif name == "lambda0-bi":
        if not isinstance(shape, TwoPrimes):
            raise ShapeMismatch(f"lambda0-bi needs n = p1*p2 with distinct primes, got {n}")
        lam = lambda0_two_primes(shape.p1, shape.p2, k)
        pred, prov = lambda0_two_primes_length(shape.p1, shape.p2, k), "k(k-1)/2 (p1 p2 + p1 + p2 - 1) + k"
    elif name == "onedim-naive":
        _require_k1(name, k)
        lam = onedim_naive(ring)
        pred = prod(e + 1 for _, e in ring.factors) - 1
        prov = "(1 + a_1)...(1 + a_r) - 1"
    elif name == "onedim-gcd":
        _require_k1(name, k)
        lam = onedim_gcd(ring)
        pred, prov = onedim_gcd_length(n), "a_1 + ... + a_r + 1 (l for prime powers)"
    elif name == "root-words-mod-units":
        reps = root_words_mod_units(ring, k)
        lam = ColumnMultiset(ring, k, tuple(reps))
        pred, prov = len(reps), "one root word per unit orbit (enumerated)"
    else:
        raise ValueError(f"unknown recipe {name!r}; expected one of {', '.join(RECIPES)}")
    recipe = ConstructionRecipe(name, n, k, pred, prov)
    if lam.m != pred:
        raise AssertionError(f"{name}: emitted {lam.m} columns, predicted {pred}")
    return recipe, lam


def _require_k1(name: str, k: int):
    if k != 1:
        raise ValueError(f"{name} builds one-dimensional codes; got k={k}")
