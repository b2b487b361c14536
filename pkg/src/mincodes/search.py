"""Exhaustive search for the least length of a minimal code.

Columns are drawn from unit-orbit representatives: scaling a column by a
unit leaves every span M(v, Lambda) unchanged, and a repeated column adds
nothing, so a shortest minimal code can always be taken with pairwise
distinct representatives.

Subsets of each size are enumerated in lexicographic order of candidate
indices.  A prefix is abandoned when even prefix + every remaining candidate
fails a monotone necessary condition: the full span, a unit (k = 1 when
requested), and for each message v the span of orthogonal columns reaching
all of v^perp.  Every subset of a size level is visited, so the statistics
and the witness do not depend on the number of workers.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Optional

from .code import LinearCode, columns, is_minimal_code
from .config import default_threshold
from .errors import ThresholdExceeded
from .linalg import Submodule, Vec, all_vectors, full_module, has_independent_subset, howell_form, kernel, zero_submodule
from .perp import orbit_representatives
from .ring import RingLike, as_ring, is_unit


@dataclass
class SearchReport:
    n: int
    k: int
    m_min: Optional[int]
    witness: Optional[tuple[Vec, ...]]
    candidates_examined: int
    pruned: int
    candidate_classes: int
    searched_range: tuple[int, int]
    unit_constraint: bool
    root_only: bool
    wall_time: Optional[float] = field(default=None, compare=False)

    @property
    def complete(self) -> bool:
        return self.m_min is not None

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "m_min": self.m_min,
            "witness": [list(c) for c in self.witness] if self.witness else None,
            "search_space_stats": {
                "candidates_examined": self.candidates_examined,
                "pruned": self.pruned,
                "candidate_classes": self.candidate_classes,
            },
            "searched_range": list(self.searched_range),
            "constraints": {"unit_constraint": self.unit_constraint, "root_only": self.root_only},
        }
        if timing:
            out["search_space_stats"]["wall_time"] = self.wall_time
        return out


class _Context:
    """Per-(n, k, constraints) data shared by every subset test."""

    def __init__(self, n: int, k: int, root_only: bool, unit_constraint: bool):
        self.n, self.k = n, k
        self.cands = orbit_representatives(n, k, root_only=root_only, threshold=n**k)
        self.N = len(self.cands)
        msgs = orbit_representatives(n, k, threshold=n**k)
        self.checks: list[tuple[int, Submodule]] = []
        for v in msgs:
            mask = 0
            for j, a in enumerate(self.cands):
                if sum(x * y for x, y in zip(v, a)) % n == 0:
                    mask |= 1 << j
            self.checks.append((mask, kernel([v], n, k)))
        self.full = full_module(n, k)
        self.unit_mask = 0
        if unit_constraint:
            for j, a in enumerate(self.cands):
                if k == 1 and is_unit(a[0], n):
                    self.unit_mask |= 1 << j
        self.unit_constraint = unit_constraint
        self.tail = [0] * (self.N + 1)
        for j in range(self.N - 1, -1, -1):
            self.tail[j] = self.tail[j + 1] | (1 << j)
        self._spans: dict[int, Submodule] = {}
        self._feasible: dict[int, bool] = {}

    def cols(self, mask: int) -> list[Vec]:
        return [a for j, a in enumerate(self.cands) if mask >> j & 1]

    def span(self, mask: int) -> Submodule:
        s = self._spans.get(mask)
        if s is None:
            cols = self.cols(mask)
            s = howell_form(cols, self.n, self.k) if cols else zero_submodule(self.n, self.k)
            self._spans[mask] = s
        return s

    def feasible(self, mask: int) -> bool:
        """Criterion-style necessary condition, monotone in ``mask``."""
        hit = self._feasible.get(mask)
        if hit is None:
            hit = (
                (not self.unit_constraint or self.k != 1 or bool(mask & self.unit_mask))
                and self.span(mask) == self.full
                and all(self.span(mask & orth) == perp for orth, perp in self.checks)
            )
            self._feasible[mask] = hit
        return hit

    def accepts(self, mask: int) -> bool:
        return self.feasible(mask) and has_independent_subset(self.cols(mask), self.n, self.k)

    def explore(self, first: int, m: int) -> tuple[int, int, Optional[tuple[int, ...]]]:
        """All m-subsets whose least index is ``first``: (examined, pruned, least accepted)."""
        examined = pruned = 0
        best = None

        def rec(mask, chosen, start, left):
            nonlocal examined, pruned, best
            if left == 0:
                examined += 1
                if best is None and self.accepts(mask):
                    best = tuple(chosen)
                return
            avail = self.N - start
            if avail < left:
                return
            if not self.feasible(mask | self.tail[start]):
                pruned += comb(avail, left)
                return
            for j in range(start, self.N - left + 1):
                chosen.append(j)
                rec(mask | (1 << j), chosen, j + 1, left - 1)
                chosen.pop()

        if self.N - first >= m:
            rec(1 << first, [first], first + 1, m - 1)
        return examined, pruned, best


@lru_cache(maxsize=8)
def _context(n: int, k: int, root_only: bool, unit_constraint: bool) -> _Context:
    return _Context(n, k, root_only, unit_constraint)


def _explore_task(args):
    n, k, root_only, unit_constraint, first, m = args
    return _context(n, k, root_only, unit_constraint).explore(first, m)


def search_m_min(ring: RingLike, k: int, m_cap: int, unit_constraint: Optional[bool] = None,
                 root_only: bool = False, threshold: Optional[int] = None,
                 workers: int = 1) -> SearchReport:
    """Least m <= m_cap admitting a minimal code, with the least witness.

    ``unit_constraint`` defaults to on for k = 1 and is ignored otherwise.
    When nothing up to ``m_cap`` works the report has ``m_min = None``.
    """
    ring = as_ring(ring)
    n = ring.n
    if threshold is None:
        threshold = default_threshold()
    if n**k > threshold:
        raise ThresholdExceeded(n**k, threshold)
    if m_cap < k:
        raise ValueError(f"m_cap={m_cap} must be at least k={k}")
    if unit_constraint is None:
        unit_constraint = k == 1
    unit_constraint = bool(unit_constraint) and k == 1
    t0 = time.perf_counter()
    ctx = _context(n, k, root_only, unit_constraint)
    examined = pruned = 0
    m_min = witness = None
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for m in range(k, m_cap + 1):
            tasks = [(n, k, root_only, unit_constraint, i, m) for i in range(ctx.N)]
            results = pool.map(_explore_task, tasks) if pool else map(_explore_task, tasks)
            found = []
            for e, p, best in results:
                examined += e
                pruned += p
                if best is not None:
                    found.append(best)
            if found:
                m_min = m
                witness = tuple(ctx.cands[j] for j in min(found))
                break
    finally:
        if pool:
            pool.shutdown()
    return SearchReport(
        n, k, m_min, witness, examined, pruned, ctx.N, (k, m_cap),
        unit_constraint, root_only, wall_time=time.perf_counter() - t0,
    )


def extension_columns(n: int, k: int, count: int) -> list[Vec]:
    """The first ``count`` entries of the nonzero vectors of Z_n^k, cycled in lexicographic order."""
    nonzero = [v for v in all_vectors(n, k) if any(v)]
    return [nonzero[i % len(nonzero)] for i in range(count)]


def monotonicity_check(ring: RingLike, k: int, base_report: SearchReport, extra: int,
                       threshold: Optional[int] = None) -> bool:
    """Append 1..extra further columns to the witness and re-verify each code."""
    if base_report.witness is None:
        raise ValueError("search report has no witness")
    ring = as_ring(ring)
    added = extension_columns(ring.n, k, extra)
    for t in range(1, extra + 1):
        lam = columns(base_report.witness + tuple(added[:t]), ring, k)
        if not is_minimal_code(LinearCode(lam), threshold=threshold).verdict:
            return False
    return True
