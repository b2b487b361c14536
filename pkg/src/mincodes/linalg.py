"""Vectors, matrices and submodules of Z_n^k.

Vectors are tuples of residues and matrices are tuples of row vectors; the
modulus travels alongside.  Submodules are stored through their Howell
normal form, which is unique per submodule, so set equality of two
submodules is plain equality of their canonical row tuples.

The Howell form used here:

* rows in echelon order with strictly increasing pivot columns,
* every pivot is a divisor of n (the canonical generator of its ideal),
* entries above a pivot lie in ``[0, pivot)``,
* for every column j, the rows whose pivot is at or after j span exactly the
  elements of the module that vanish on the first j coordinates.

The last property is what makes the form unique and what lets
:func:`kernel` read a solution module off an augmented matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import gcd
from typing import Iterable, Sequence

from .config import default_threshold
from .errors import DimensionMismatch, MatrixParseError, ThresholdExceeded
from .ring import RingLike, modulus, unit_normalizer, xgcd

Vec = tuple[int, ...]
Matrix = tuple[Vec, ...]


def vec(values: Iterable[int], n: int) -> Vec:
    return tuple(int(x) % n for x in values)


def zero(k: int) -> Vec:
    return (0,) * k


def unit_vector(i: int, k: int) -> Vec:
    return tuple(1 if j == i else 0 for j in range(k))


def scale(a: int, v: Sequence[int], n: int) -> Vec:
    return tuple(a * x % n for x in v)


def add(v: Sequence[int], w: Sequence[int], n: int) -> Vec:
    if len(v) != len(w):
        raise DimensionMismatch(f"lengths {len(v)} and {len(w)} differ")
    return tuple((x + y) % n for x, y in zip(v, w))


def inner_product(v: Sequence[int], w: Sequence[int], ring: RingLike) -> int:
    """``sum(v_i * w_i) mod n``."""
    if len(v) != len(w):
        raise DimensionMismatch(f"lengths {len(v)} and {len(w)} differ")
    n = modulus(ring)
    return sum(x * y for x, y in zip(v, w)) % n


def transpose(rows: Sequence[Sequence[int]], width: int) -> Matrix:
    return tuple(tuple(r[j] for r in rows) for j in range(width))


def all_vectors(n: int, k: int):
    """Every element of Z_n^k in lexicographic order."""
    return product(range(n), repeat=k)


def content(v: Sequence[int], n: int) -> int:
    """``gcd(v_1, ..., v_k, n)``; a vector is annihilated exactly by multiples of n/content."""
    g = n
    for x in v:
        g = gcd(g, x)
    return g


# Howell normal form


def _howell_rows(rows: Iterable[Sequence[int]], n: int, width: int) -> list[list[int]]:
    A = [[x % n for x in r] for r in rows]
    for r in A:
        if len(r) != width:
            raise DimensionMismatch(f"row {tuple(r)} does not have length {width}")
    A = [r for r in A if any(r)]
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        # Unimodular 2x2 steps push the gcd of the column into row r.
        for i in range(r + 1, len(A)):
            b = A[i][c]
            if not b:
                continue
            a = A[r][c]
            g, s, t = xgcd(a, b)
            ag, bg = a // g, b // g
            top, low = A[r], A[i]
            A[r] = [(s * x + t * y) % n for x, y in zip(top, low)]
            A[i] = [(ag * y - bg * x) % n for x, y in zip(top, low)]
        u = unit_normalizer(A[r][c], n)
        if u != 1:
            A[r] = [u * x % n for x in A[r]]
        d = A[r][c]
        for i in range(r):
            q = A[i][c] // d
            if q:
                A[i] = [(x - q * y) % n for x, y in zip(A[i], A[r])]
        # (n/d) * row kills the pivot; what survives must stay in the span.
        extra = [(n // d) * x % n for x in A[r]]
        if any(extra):
            A.append(extra)
        r += 1
    return A[:r]


@dataclass(frozen=True)
class Submodule:
    """A submodule of Z_n^k held in Howell normal form."""

    n: int
    k: int
    canon: Matrix
    cardinality: int = field(compare=False)

    @property
    def ambient_dim(self) -> int:
        return self.k

    @property
    def pivots(self) -> tuple[tuple[int, int], ...]:
        """``(column, pivot value)`` for each canonical row."""
        out = []
        for row in self.canon:
            c = next(j for j, x in enumerate(row) if x)
            out.append((c, row[c]))
        return tuple(out)

    def is_zero(self) -> bool:
        return not self.canon

    def __contains__(self, x) -> bool:
        return membership(x, self)

    def __len__(self) -> int:
        return self.cardinality

    def elements(self, threshold: int | None = None) -> list[Vec]:
        return enumerate_submodule(self, threshold)


def _make(canon_rows: list[list[int]], n: int, k: int) -> Submodule:
    canon = tuple(tuple(r) for r in canon_rows)
    card = 1
    for row in canon:
        d = next(x for x in row if x)
        card *= n // d
    return Submodule(n, k, canon, card)


def howell_form(rows: Iterable[Sequence[int]], ring: RingLike, k: int | None = None) -> Submodule:
    """Canonical form of the row span of ``rows``.

    ``k`` is required when ``rows`` is empty.
    """
    n = modulus(ring)
    rows = [tuple(r) for r in rows]
    if k is None:
        if not rows:
            raise DimensionMismatch("ambient dimension needed for an empty matrix")
        k = len(rows[0])
    if k < 1:
        raise DimensionMismatch("ambient dimension must be >= 1")
    return _cached_howell(tuple(rows), n, k)


@lru_cache(maxsize=65536)
def _cached_howell(rows: Matrix, n: int, k: int) -> Submodule:
    return _make(_howell_rows(rows, n, k), n, k)


span = howell_form


def zero_submodule(ring: RingLike, k: int) -> Submodule:
    return Submodule(modulus(ring), k, (), 1)


def full_module(ring: RingLike, k: int) -> Submodule:
    n = modulus(ring)
    return howell_form([unit_vector(i, k) for i in range(k)], n, k)


def _check_same(a: Submodule, b: Submodule):
    if (a.n, a.k) != (b.n, b.k):
        raise DimensionMismatch(
            f"ambient spaces Z_{a.n}^{a.k} and Z_{b.n}^{b.k} differ"
        )


def submodule_equal(a: Submodule, b: Submodule) -> bool:
    _check_same(a, b)
    return a.canon == b.canon


def is_submodule(a: Submodule, b: Submodule) -> bool:
    """True when every generator of ``a`` lies in ``b``."""
    _check_same(a, b)
    return all(membership(row, b) for row in a.canon)


def membership(x: Sequence[int], s: Submodule) -> bool:
    if len(x) != s.k:
        raise DimensionMismatch(f"vector of length {len(x)} vs ambient dimension {s.k}")
    n = s.n
    x = [v % n for v in x]
    for row in s.canon:
        c = next(j for j, v in enumerate(row) if v)
        if any(x[:c]):
            return False
        d = row[c]
        if x[c] % d:
            return False
        q = x[c] // d
        if q:
            x = [(a - q * b) % n for a, b in zip(x, row)]
    return not any(x)


def module_sum(a: Submodule, b: Submodule) -> Submodule:
    _check_same(a, b)
    return howell_form(a.canon + b.canon, a.n, a.k)


def kernel(rows: Iterable[Sequence[int]], ring: RingLike, k: int | None = None) -> Submodule:
    """``{x in Z_n^k : <x, r> = 0 for every row r}``.

    Row-reduces ``[A^T | I_k]``; by the Howell property the canonical rows
    whose first ``len(rows)`` entries vanish span exactly ``{(0, x) : A x = 0}``.
    """
    n = modulus(ring)
    rows = [tuple(r) for r in rows]
    if k is None:
        if not rows:
            raise DimensionMismatch("ambient dimension needed for an empty matrix")
        k = len(rows[0])
    return _cached_kernel(tuple(rows), n, k)


@lru_cache(maxsize=65536)
def _cached_kernel(rows: Matrix, n: int, k: int) -> Submodule:
    for r in rows:
        if len(r) != k:
            raise DimensionMismatch(f"row {r} does not have length {k}")
    s = len(rows)
    if s == 0:
        return full_module(n, k)
    aug = [
        [rows[i][j] for i in range(s)] + [1 if t == j else 0 for t in range(k)]
        for j in range(k)
    ]
    H = _howell_rows(aug, n, s + k)
    gens = [row[s:] for row in H if not any(row[:s])]
    return howell_form(gens, n, k)


def perp(s: Submodule) -> Submodule:
    """Orthogonal module of a submodule (the kernel of its generators)."""
    return kernel(s.canon, s.n, s.k)


def is_linearly_independent(rows: Sequence[Sequence[int]], ring: RingLike) -> bool:
    """True iff the only vanishing combination of ``rows`` is the trivial one.

    The coefficient vectors of vanishing combinations are the kernel of the
    transposed matrix, so independence is that kernel being zero.
    """
    n = modulus(ring)
    rows = [tuple(r) for r in rows]
    if not rows:
        return True
    width = len(rows[0])
    if len(rows) > width:
        # more than k vectors in Z_n^k are always dependent
        return False
    return kernel(transpose(rows, width), n, len(rows)).is_zero()


def has_independent_subset(rows: Sequence[Sequence[int]], ring: RingLike, k: int) -> bool:
    """Does the multiset contain k linearly independent vectors?"""
    n = modulus(ring)
    distinct = list(dict.fromkeys(tuple(r) for r in rows))
    if len(distinct) < k:
        return False
    if howell_form(distinct, n, k) != full_module(n, k):
        # k independent vectors in Z_n^k already span everything
        return False
    return any(is_linearly_independent(sub, n) for sub in combinations(distinct, k))


def enumerate_submodule(s: Submodule, threshold: int | None = None) -> list[Vec]:
    """All elements of ``s`` sorted lexicographically."""
    if threshold is None:
        threshold = default_threshold()
    if s.cardinality > threshold:
        raise ThresholdExceeded(s.cardinality, threshold)
    n, k = s.n, s.k
    ranges = [range(n // next(x for x in row if x)) for row in s.canon]
    out = set()
    for coeffs in product(*ranges):
        out.add(
            tuple(sum(c * row[j] for c, row in zip(coeffs, s.canon)) % n for j in range(k))
        )
    return sorted(out)


# Matrix text format: header "n k rows", then one vector per line.


def parse_matrix_text(text: str) -> tuple[int, int, list[Vec]]:
    lines = [
        (i, ln.split("#", 1)[0].strip())
        for i, ln in enumerate(text.splitlines(), start=1)
    ]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise MatrixParseError("empty matrix file")
    hline, header = lines[0]
    parts = header.split()
    if len(parts) != 3:
        raise MatrixParseError("header must be 'n k rows'", line=hline)
    try:
        n, k, count = (int(p) for p in parts)
    except ValueError:
        raise MatrixParseError(f"non-integer header {header!r}", line=hline) from None
    if n < 2:
        raise MatrixParseError(f"modulus must be >= 2, got {n}", line=hline)
    if k < 1 or count < 0:
        raise MatrixParseError("dimension must be >= 1 and row count >= 0", line=hline)
    body = lines[1:]
    if len(body) != count:
        raise MatrixParseError(f"header announces {count} rows, found {len(body)}", line=hline)
    rows = []
    for lineno, ln in body:
        tokens = ln.split()
        if len(tokens) != k:
            raise MatrixParseError(f"expected {k} entries, found {len(tokens)}", line=lineno)
        row = []
        for col, tok in enumerate(tokens, start=1):
            try:
                x = int(tok)
            except ValueError:
                raise MatrixParseError(f"non-integer entry {tok!r}", lineno, col) from None
            if not 0 <= x < n:
                raise MatrixParseError(f"residue {x} outside [0, {n})", lineno, col)
            row.append(x)
        rows.append(tuple(row))
    return n, k, rows


def format_matrix_text(n: int, k: int, rows: Sequence[Sequence[int]]) -> str:
    out = [f"{n} {k} {len(rows)}"]
    out.extend(" ".join(str(x) for x in r) for r in rows)
    return "\n".join(out) + "\n"

