"""Root words and explicit generating sets for orthogonal modules v^perp.

Over Z_{p^l} and Z_{p1 p2} the generators of v^perp can be written down
directly from the coordinates of v.  Every explicit basis built here is
checked against the generic :func:`mincodes.linalg.kernel` in the test suite;
for other rings :func:`perp_basis` falls back on the generic kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .config import default_threshold
from .errors import DimensionMismatch, DoublePerpViolation, ThresholdExceeded
from .linalg import (
    Submodule,
    Vec,
    all_vectors,
    content,
    howell_form,
    is_linearly_independent,
    kernel,
    scale,
)
from .ring import (
    PrimePower,
    RingLike,
    RingSpec,
    TwoPrimes,
    as_ring,
    invert,
    is_unit,
    unit_normalizer,
    units,
)

# construction tags
ROOT_PRIME_POWER = "prime-power/root"
NONROOT_PRIME_POWER = "prime-power/non-root"
UNIT_TWO_PRIMES = "two-primes/unit-component"
P1_MULTIPLES = "two-primes/p1-multiples"
P2_MULTIPLES = "two-primes/p2-multiples"
MIXED_TWO_PRIMES = "two-primes/mixed"


@dataclass(frozen=True)
class RootWordClassification:
    vector: Vec
    is_root: bool
    witness: Optional[int] = None
    # (r, y) with vector == p^r * y, y a root word; prime-power rings only
    decomposition: Optional[tuple[int, Vec]] = None


@dataclass(frozen=True)
class PerpBasis:
    source: Vec
    generators: tuple[Vec, ...]
    claimed_free: bool
    construction_tag: Optional[str]
    n: int

    def span(self) -> Submodule:
        return howell_form(self.generators, self.n, len(self.source))


def _check_nonzero(v: Sequence[int], n: int) -> Vec:
    v = tuple(x % n for x in v)
    if not v:
        raise DimensionMismatch("empty vector")
    if not any(v):
        raise ValueError("the zero vector is not allowed here")
    return v


def is_root_word(v: Sequence[int], ring: RingLike) -> bool:
    """No nonzero scalar annihilates v, i.e. gcd(v_1, ..., v_k, n) == 1."""
    n = as_ring(ring).n
    return content(v, n) == 1


def classify_root_word(v: Sequence[int], ring: RingLike) -> RootWordClassification:
    ring = as_ring(ring)
    n = ring.n
    v = tuple(x % n for x in v)
    g = content(v, n)
    if g == 1:
        return RootWordClassification(v, True)
    # a*v == 0 exactly for multiples of n/g; n/g is the least positive one
    witness = n // g
    decomposition = None
    shape = ring.shape
    if isinstance(shape, PrimePower) and any(v):
        r = 0
        while g % shape.p ** (r + 1) == 0:
            r += 1
        y = tuple(x // shape.p**r for x in v)
        decomposition = (r, y)
    return RootWordClassification(v, False, witness, decomposition)


def root_word_formula(ring: RingLike, k: int) -> Optional[int]:
    """Closed-form root-word counts as printed for the two ring shapes.

    The two-prime expression does not agree with exhaustive counts (for
    Z_6^2 it gives 30, there are 24 root words); it is returned verbatim so
    callers can show the discrepancy.  Use :func:`count_root_words` for the
    true number.
    """
    shape = as_ring(ring).shape
    if isinstance(shape, PrimePower):
        p, l = shape.p, shape.l
        return p ** (l * k) - p ** ((l - 1) * k)
    if isinstance(shape, TwoPrimes):
        p1, p2 = shape.p1, shape.p2
        return p1**k * p2**k - (p2 - 1) ** k - (p1 - 1) ** k - 1
    return None


def _check_enumerable(n: int, k: int, threshold: Optional[int]):
    if threshold is None:
        threshold = default_threshold()
    if n**k > threshold:
        raise ThresholdExceeded(n**k, threshold)


def count_root_words(ring: RingLike, k: int, threshold: Optional[int] = None) -> tuple[int, Optional[int]]:
    """``(exhaustive count, closed-form count or None)``."""
    ring = as_ring(ring)
    _check_enumerable(ring.n, k, threshold)
    count = sum(1 for v in all_vectors(ring.n, k) if content(v, ring.n) == 1)
    return count, root_word_formula(ring, k)


def unit_orbit_representative(v: Sequence[int], ring: RingLike) -> Vec:
    """Lexicographically least element of ``{u*v : u a unit}``."""
    n = as_ring(ring).n
    return min(scale(u, v, n) for u in units(n))


@lru_cache(maxsize=None)
def _orbit_reps(n: int, k: int, root_only: bool) -> tuple[Vec, ...]:
    us = units(n)
    seen = set()
    reps = []
    for v in all_vectors(n, k):
        if not any(v) or v in seen:
            continue
        if root_only and content(v, n) != 1:
            continue
        orbit = {scale(u, v, n) for u in us}
        seen |= orbit
        # lexicographic sweep meets the least orbit member first
        reps.append(v)
    return tuple(reps)


def orbit_representatives(ring: RingLike, k: int, root_only: bool = False,
                          threshold: Optional[int] = None) -> list[Vec]:
    """Unit-orbit representatives of the nonzero vectors of Z_n^k, sorted."""
    ring = as_ring(ring)
    _check_enumerable(ring.n, k, threshold)
    return list(_orbit_reps(ring.n, k, root_only))


def root_words_mod_units(ring: RingLike, k: int, threshold: Optional[int] = None) -> list[Vec]:
    return orbit_representatives(ring, k, root_only=True, threshold=threshold)


# explicit generators


def _leader_basis(v: Vec, lead: int, lead_inv: int, n: int, block: Sequence[int]) -> list[Vec]:
    """Vectors ``-a_j * lead_inv * e_lead + e_j`` for j in ``block``.

    With ``v_j = c * a_j`` and ``v_lead = c * u`` these are orthogonal to v.
    """
    k = len(v)
    out = []
    for j in block:
        g = [0] * k
        g[lead] = -v[j] * lead_inv % n
        g[j] = 1
        out.append(tuple(g))
    return out


def _prime_power_basis(v: Vec, ring: RingSpec, shape: PrimePower) -> PerpBasis:
    n, p, l = ring.n, shape.p, shape.l
    k = len(v)
    cls = classify_root_word(v, ring)
    if cls.is_root:
        r, y = 0, v
    else:
        r, y = cls.decomposition
    # the first unit coordinate of the root-word core plays the role of position 1
    lead = next(i for i, x in enumerate(y) if is_unit(x, n))
    inv = invert(y[lead], n)
    others = [j for j in range(k) if j != lead]
    gens = [
        tuple(x % n for x in g)
        for g in _leader_basis(tuple(yy % n for yy in y), lead, inv, n, others)
    ]
    if r == 0:
        return PerpBasis(v, tuple(gens), True, ROOT_PRIME_POWER, n)
    s = l - r
    assert s >= 1 and s + r >= l and s - 1 + r < l
    if gens:
        extra = list(gens[0])
        extra[lead] = (extra[lead] + p**s) % n
    else:
        extra = [p**s % n]
    gens.append(tuple(extra))
    return PerpBasis(v, tuple(gens), False, NONROOT_PRIME_POWER, n)


def _single_prime_multiples(v: Vec, n: int, q: int, other: int, tag: str) -> PerpBasis:
    """v has only multiples of the prime q as coordinates."""
    k = len(v)
    lead = next(i for i, x in enumerate(v) if x)
    # v_lead = q*u with u a unit; scale v so that v_lead becomes exactly q
    u = unit_normalizer(v[lead], n)
    w = scale(u, v, n)
    assert w[lead] == q
    others = [j for j in range(k) if j != lead]
    # with w_j = q*b_j, generators -b_j e_lead + e_j and the complement-prime vector
    gens = []
    for j in others:
        g = [0] * k
        g[lead] = -(w[j] // q) % n
        g[j] = 1
        gens.append(tuple(g))
    if gens:
        extra = list(gens[0])
        extra[lead] = (extra[lead] + other) % n
    else:
        extra = [other]
    gens.append(tuple(extra))
    return PerpBasis(v, tuple(gens), False, tag, n)


def _mixed_two_primes(v: Vec, n: int, p1: int, p2: int) -> PerpBasis:
    k = len(v)
    block1 = [i for i, x in enumerate(v) if x and x % p1 == 0]
    block2 = [i for i, x in enumerate(v) if x and x % p2 == 0]
    zeros = [i for i, x in enumerate(v) if not x]
    i1, i2 = block1[0], block2[0]
    u = unit_normalizer(v[i1], n)  # u*v_i1 == p1
    w = unit_normalizer(v[i2], n)  # w*v_i2 == p2
    gens = []
    v1 = scale(u, v, n)
    for j in block1[1:] + zeros:
        g = [0] * k
        g[i1] = -(v1[j] // p1) % n
        g[j] = 1
        gens.append(tuple(g))
    v2 = scale(w, v, n)
    for j in block2[1:]:
        g = [0] * k
        g[i2] = -(v2[j] // p2) % n
        g[j] = 1
        gens.append(tuple(g))
    bridge = [0] * k
    bridge[i1] = p2
    bridge[i2] = p1
    gens.append(tuple(bridge))
    return PerpBasis(v, tuple(gens), True, MIXED_TWO_PRIMES, n)


def _two_primes_basis(v: Vec, ring: RingSpec, shape: TwoPrimes) -> PerpBasis:
    n, p1, p2 = ring.n, shape.p1, shape.p2
    k = len(v)
    lead = next((i for i, x in enumerate(v) if is_unit(x, n)), None)
    if lead is not None:
        inv = invert(v[lead], n)
        gens = _leader_basis(v, lead, inv, n, [j for j in range(k) if j != lead])
        return PerpBasis(v, tuple(gens), True, UNIT_TWO_PRIMES, n)
    if all(x % p1 == 0 for x in v):
        return _single_prime_multiples(v, n, p1, p2, P1_MULTIPLES)
    if all(x % p2 == 0 for x in v):
        return _single_prime_multiples(v, n, p2, p1, P2_MULTIPLES)
    return _mixed_two_primes(v, n, p1, p2)


def perp_basis(v: Sequence[int], ring: RingLike) -> PerpBasis:
    """Explicit generating set of v^perp for a nonzero v."""
    ring = as_ring(ring)
    v = _check_nonzero(v, ring.n)
    shape = ring.shape
    if isinstance(shape, PrimePower):
        return _prime_power_basis(v, ring, shape)
    if isinstance(shape, TwoPrimes):
        return _two_primes_basis(v, ring, shape)
    K = kernel([v], ring.n, len(v))
    return PerpBasis(v, K.canon, False, None, ring.n)


def predicted_perp_cardinality(v: Sequence[int], ring: RingLike) -> Optional[int]:
    """|v^perp| from the closed forms for each vector class, or None for other rings."""
    ring = as_ring(ring)
    n = ring.n
    v = _check_nonzero(v, n)
    k = len(v)
    shape = ring.shape
    if isinstance(shape, PrimePower):
        p, l = shape.p, shape.l
        cls = classify_root_word(v, ring)
        r = 0 if cls.is_root else cls.decomposition[0]
        return p ** (l * (k - 1)) * p**r
    if isinstance(shape, TwoPrimes):
        p1, p2 = shape.p1, shape.p2
        if any(is_unit(x, n) for x in v):
            return n ** (k - 1)
        if all(x % p1 == 0 for x in v):
            return p1**k * p2 ** (k - 1)
        if all(x % p2 == 0 for x in v):
            return p2**k * p1 ** (k - 1)
        return n ** (k - 1)
    return None


def basis_is_free(basis: PerpBasis) -> bool:
    return is_linearly_independent(basis.generators, basis.n)


def double_perp(v: Sequence[int], ring: RingLike) -> Submodule:
    """``(v^perp)^perp``, asserted equal to the cyclic module <v>."""
    ring = as_ring(ring)
    n = ring.n
    v = _check_nonzero(v, n)
    k = len(v)
    first = kernel([v], n, k)
    second = kernel(first.canon, n, k)
    cyclic = howell_form([v], n, k)
    if second != cyclic:
        raise DoublePerpViolation(f"(v^perp)^perp != <v> for v={v} over Z_{n}")
    return second
