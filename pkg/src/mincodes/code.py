"""Codes C(Lambda) over Z_n and the two minimality deciders.

A code is given by an ordered multiset of columns alpha_1..alpha_m in Z_n^k;
message v encodes to ``(<v, alpha_1>, ..., <v, alpha_m>)``.

Two independent ways of deciding whether c(v) is a minimal codeword:

* the definitional oracle enumerates every codeword covered by c(v) and
  checks it is a scalar multiple of c(v);
* the criterion compares the span of the columns orthogonal to v with the
  full orthogonal module v^perp.

Coordinates are 0-based internally.  Supports returned by :func:`support`
and everything written into reports are 1-based.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import InitVar, dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Optional, Sequence

import numpy as np

from .config import default_threshold
from .errors import (
    DeciderMismatch,
    DimensionMismatch,
    PreconditionError,
    ThresholdExceeded,
)
from .linalg import (
    Submodule,
    Vec,
    has_independent_subset,
    howell_form,
    inner_product,
    kernel,
    scale,
    transpose,
    zero_submodule,
)
from .perp import orbit_representatives
from .ring import RingLike, RingSpec, as_ring


def support(x: Sequence[int]) -> frozenset[int]:
    """1-based indices of the nonzero coordinates."""
    return frozenset(i + 1 for i, v in enumerate(x) if v)


def weight(x: Sequence[int]) -> int:
    return sum(1 for v in x if v)


def distance(x: Sequence[int], y: Sequence[int]) -> int:
    if len(x) != len(y):
        raise DimensionMismatch(f"lengths {len(x)} and {len(y)} differ")
    return sum(1 for a, b in zip(x, y) if a != b)


def covers(big: Sequence[int], small: Sequence[int]) -> bool:
    """True iff Supp(small) is a subset of Supp(big)."""
    if len(big) != len(small):
        raise DimensionMismatch(f"lengths {len(big)} and {len(small)} differ")
    return all(b or not s for b, s in zip(big, small))


@dataclass(frozen=True)
class ColumnMultiset:
    """Ordered multiset Lambda of columns in Z_n^k.

    Construction checks that the columns contain k linearly independent
    vectors unless ``check=False``.
    """

    ring: RingSpec
    k: int
    columns: tuple[Vec, ...]
    check: InitVar[bool] = True

    def __post_init__(self, check):
        if not isinstance(self.ring, RingSpec):
            object.__setattr__(self, "ring", as_ring(self.ring))
        n = self.ring.n
        cols = []
        for c in self.columns:
            c = tuple(int(x) for x in c)
            if len(c) != self.k:
                raise DimensionMismatch(f"column {c} does not have length {self.k}")
            if any(not 0 <= x < n for x in c):
                raise ValueError(f"column {c} has entries outside [0, {n})")
            cols.append(c)
        object.__setattr__(self, "columns", tuple(cols))
        if check and not has_independent_subset(self.columns, n, self.k):
            raise PreconditionError(
                f"columns do not contain {self.k} linearly independent vectors over Z_{n}"
            )

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def m(self) -> int:
        return len(self.columns)

    def distinct(self) -> tuple[Vec, ...]:
        return tuple(dict.fromkeys(self.columns))

    def extended(self, extra: Iterable[Sequence[int]]) -> "ColumnMultiset":
        return ColumnMultiset(self.ring, self.k, self.columns + tuple(tuple(c) for c in extra))

    def span(self) -> Submodule:
        return howell_form(self.distinct(), self.n, self.k)


def columns(cols: Iterable[Sequence[int]], ring: RingLike, k: Optional[int] = None,
            check: bool = True) -> ColumnMultiset:
    cols = [tuple(c) for c in cols]
    if k is None:
        k = len(cols[0])
    return ColumnMultiset(as_ring(ring), k, tuple(cols), check)


@dataclass(frozen=True)
class LinearCode:
    lam: ColumnMultiset

    @property
    def n(self) -> int:
        return self.lam.n

    @property
    def k(self) -> int:
        return self.lam.k

    @property
    def m(self) -> int:
        return self.lam.m

    @cached_property
    def generator_matrix(self) -> tuple[Vec, ...]:
        """k x m; column j is alpha_j."""
        return transpose(self.lam.columns, self.k)

    @cached_property
    def injective_encoding(self) -> bool:
        # v -> c(v) is injective iff no nonzero v is orthogonal to every column
        return kernel(self.lam.distinct(), self.n, self.k).is_zero()


def encode(v: Sequence[int], code: LinearCode) -> Vec:
    if len(v) != code.k:
        raise DimensionMismatch(f"message of length {len(v)}, code has k={code.k}")
    n = code.n
    return tuple(inner_product(v, a, n) for a in code.lam.columns)


def orthogonal_columns(v: Sequence[int], lam: ColumnMultiset) -> tuple[list[Vec], Submodule]:
    """Distinct columns orthogonal to v, and their span M(v, Lambda)."""
    if len(v) != lam.k:
        raise DimensionMismatch(f"message of length {len(v)}, columns have k={lam.k}")
    n = lam.n
    orth = [a for a in lam.distinct() if inner_product(v, a, n) == 0]
    if not orth:
        return orth, zero_submodule(n, lam.k)
    return orth, howell_form(orth, n, lam.k)


@dataclass(frozen=True)
class Counterexample:
    message: Vec
    other: Vec
    codeword: Vec
    other_codeword: Vec

    @property
    def reason(self) -> str:
        return (
            f"c{self.other}={self.other_codeword} is covered by c{self.message}={self.codeword}"
            f" (support {sorted(support(self.other_codeword))} within"
            f" {sorted(support(self.codeword))}) but is not a scalar multiple of it"
        )

    def to_dict(self) -> dict:
        return {
            "message": list(self.message),
            "v_prime": list(self.other),
            "codeword": list(self.codeword),
            "v_prime_codeword": list(self.other_codeword),
            "reason": self.reason,
        }


@dataclass
class MinimalityReport:
    subject: object  # a message vector, or the string "code"
    verdict: bool
    method: str  # "oracle" | "criterion" | "both"
    counterexample: Optional[Counterexample] = None
    criterion_evidence: Optional[tuple[tuple[Vec, ...], tuple[Vec, ...]]] = None
    per_message_failures: list[Vec] = field(default_factory=list)
    messages_checked: int = 0

    def to_dict(self) -> dict:
        out = {
            "subject": self.subject if isinstance(self.subject, str) else list(self.subject),
            "verdict": self.verdict,
            "method": self.method,
            "per_message_failures": [list(v) for v in self.per_message_failures],
            "messages_checked": self.messages_checked,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_dict()
        if self.criterion_evidence is not None:
            M, O = self.criterion_evidence
            out["criterion_evidence"] = {
                "M": [list(r) for r in M],
                "O": [list(r) for r in O],
            }
        return out


def _check_message(v: Sequence[int], code: LinearCode) -> Vec:
    if len(v) != code.k:
        raise DimensionMismatch(f"message of length {len(v)}, code has k={code.k}")
    v = tuple(x % code.n for x in v)
    if not any(v):
        raise ValueError("minimality is only defined for nonzero messages")
    return v


def _check_feasible(code: LinearCode, threshold: Optional[int]):
    if threshold is None:
        threshold = default_threshold()
    size = code.n**code.k
    if size > threshold:
        raise ThresholdExceeded(size, threshold)


def is_minimal_codeword_oracle(v: Sequence[int], code: LinearCode,
                               threshold: Optional[int] = None) -> MinimalityReport:
    """Decide minimality of c(v) straight from the definition.

    Scans every message v' in lexicographic order; c(v') is a witness
    against minimality when it is nonzero, covered by c(v) and not of the
    form a*c(v).  Codewords are compared as values, so a non-injective
    encoding is handled by working on the set of distinct codewords.
    """
    v = _check_message(v, code)
    _check_feasible(code, threshold)
    n = code.n
    cv = encode(v, code)
    multiples = {scale(a, cv, n) for a in range(n)}
    seen = set()
    for w in product(range(n), repeat=code.k):
        cw = encode(w, code)
        if cw in seen:
            continue
        seen.add(cw)
        if not any(cw) or cw in multiples or not covers(cv, cw):
            continue
        return MinimalityReport(v, False, "oracle", Counterexample(v, w, cv, cw))
    return MinimalityReport(v, True, "oracle")


def is_minimal_codeword(v: Sequence[int], code: LinearCode) -> MinimalityReport:
    """Criterion: c(v) is minimal iff span(columns orthogonal to v) == v^perp."""
    v = _check_message(v, code)
    _, M = orthogonal_columns(v, code.lam)
    O = kernel([v], code.n, code.k)
    return MinimalityReport(v, M == O, "criterion", criterion_evidence=(M.canon, O.canon))


# whole-code tables


def _message_index(vs: np.ndarray, n: int) -> np.ndarray:
    k = vs.shape[1]
    weights = n ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return vs @ weights


class _OracleTable:
    """Definitional oracle vectorized over all messages of one code."""

    def __init__(self, code: LinearCode):
        n, k = code.n, code.k
        self.code = code
        self.msgs = np.array(list(product(range(n), repeat=k)), dtype=np.int64).reshape(-1, k)
        G = np.array(code.generator_matrix, dtype=np.int64).reshape(k, code.m)
        self.words = self.msgs @ G % n
        self.supp = self.words != 0
        self.nonzero = self.supp.any(axis=1)
        _, ids = np.unique(self.words, axis=0, return_inverse=True)
        self.ids = ids.reshape(-1)
        self.scalars = np.arange(n, dtype=np.int64)[:, None]

    def check(self, v: Vec) -> Optional[Counterexample]:
        n = self.code.n
        vi = int(_message_index(np.array([v], dtype=np.int64), n)[0])
        covered = ~(self.supp & ~self.supp[vi]).any(axis=1) & self.nonzero
        mult_msgs = self.scalars * np.array(v, dtype=np.int64) % n
        mult_ids = self.ids[_message_index(mult_msgs, n)]
        bad = covered & ~np.isin(self.ids, mult_ids)
        hits = np.flatnonzero(bad)
        if hits.size == 0:
            return None
        j = int(hits[0])
        other = tuple(int(x) for x in self.msgs[j])
        return Counterexample(
            v, other,
            tuple(int(x) for x in self.words[vi]),
            tuple(int(x) for x in self.words[j]),
        )


def oracle_table(code: LinearCode, messages: Optional[Iterable[Vec]] = None,
                 threshold: Optional[int] = None) -> dict[Vec, Optional[Counterexample]]:
    """Oracle verdicts for many messages: None means minimal."""
    _check_feasible(code, threshold)
    table = _OracleTable(code)
    if messages is None:
        messages = (v for v in product(range(code.n), repeat=code.k) if any(v))
    return {tuple(v): table.check(tuple(v)) for v in messages}


def criterion_table(code: LinearCode, messages: Optional[Iterable[Vec]] = None,
                    threshold: Optional[int] = None) -> dict[Vec, bool]:
    """Criterion verdicts for many messages; spans are cached per orthogonal column set."""
    n, k = code.n, code.k
    if messages is None:
        _check_feasible(code, threshold)
        messages = [v for v in product(range(n), repeat=k) if any(v)]
    else:
        messages = [tuple(v) for v in messages]
    if not messages:
        return {}
    distinct = code.lam.distinct()
    V = np.array(messages, dtype=np.int64).reshape(-1, k)
    A = np.array(distinct, dtype=np.int64).reshape(-1, k)
    orth = (V @ A.T % n) == 0
    spans: dict[bytes, Submodule] = {}
    out = {}
    for v, row in zip(messages, orth):
        key = np.packbits(row).tobytes()
        M = spans.get(key)
        if M is None:
            chosen = [distinct[j] for j in np.flatnonzero(row)]
            M = howell_form(chosen, n, k) if chosen else zero_submodule(n, k)
            spans[key] = M
        out[v] = M == kernel([v], n, k)
    return out


def _messages_for(code: LinearCode, full_sweep: bool, threshold: Optional[int]) -> list[Vec]:
    if full_sweep:
        return [v for v in product(range(code.n), repeat=code.k) if any(v)]
    # c(u*v) = u*c(v) covers the same codewords, so one message per unit orbit suffices
    return orbit_representatives(code.n, code.k, threshold=threshold)


def _chunks(items: list, parts: int) -> list[list]:
    size = -(-len(items) // parts)
    return [items[i:i + size] for i in range(0, len(items), size)]


def _criterion_worker(args):
    code, msgs = args
    return criterion_table(code, msgs)


def _oracle_worker(args):
    code, msgs = args
    return oracle_table(code, msgs, threshold=code.n**code.k)


def _run(worker, code: LinearCode, msgs: list[Vec], workers: int) -> dict:
    if workers <= 1 or len(msgs) < 2:
        return worker((code, msgs))
    out = {}
    with ProcessPoolExecutor(max_workers=workers) as ex:
        for part in ex.map(worker, [(code, c) for c in _chunks(msgs, workers)]):
            out.update(part)
    return out


def is_minimal_code(code: LinearCode, method: str = "criterion", full_sweep: bool = False,
                    threshold: Optional[int] = None, workers: int = 1) -> MinimalityReport:
    """Whole-code minimality.

    ``method`` is ``"criterion"``, ``"oracle"`` or ``"both"``; with ``"both"``
    a disagreement between the deciders raises :class:`DeciderMismatch`.
    The verdict and failure list do not depend on ``workers``.
    """
    if method not in ("criterion", "oracle", "both"):
        raise ValueError(f"unknown method {method!r}")
    _check_feasible(code, threshold)
    msgs = _messages_for(code, full_sweep, threshold)
    crit = orc = None
    if method in ("criterion", "both"):
        crit = _run(_criterion_worker, code, msgs, workers)
    if method in ("oracle", "both"):
        orc = _run(_oracle_worker, code, msgs, workers)
    if crit is not None and orc is not None:
        for v in msgs:
            if crit[v] != (orc[v] is None):
                raise DeciderMismatch(f"oracle and criterion disagree at v={v}")
    if crit is not None:
        failures = [v for v in msgs if not crit[v]]
    else:
        failures = [v for v in msgs if orc[v] is not None]
    counterexample = None
    if failures and orc is not None:
        counterexample = orc[failures[0]]
    return MinimalityReport(
        "code", not failures, method, counterexample,
        per_message_failures=failures, messages_checked=len(msgs),
    )


def code_from_columns(cols: Iterable[Sequence[int]], ring: RingLike, k: Optional[int] = None,
                      check: bool = True) -> LinearCode:
    return LinearCode(columns(cols, ring, k, check))

