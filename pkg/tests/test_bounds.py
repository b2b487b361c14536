import random
from fractions import Fraction

import pytest

from mincodes.bounds import (
    bounds_report,
    double_counting_quotient,
    incidence_sum,
    lower_bound,
    upper_bound,
    word_counts,
)
from mincodes.code import LinearCode, columns, is_minimal_code
from mincodes.constructions import lambda0_prime_power
from mincodes.errors import ShapeMismatch, ThresholdExceeded
from mincodes.linalg import kernel
from mincodes.perp import root_words_mod_units

import oracles


def test_incidence_examples():
    lam0 = lambda0_prime_power(2, 2, 2)
    assert incidence_sum(lam0) == 18 == 6 * (4 - 1)
    assert incidence_sum(columns([(1, 0), (0, 1)], 4)) == 6
    single = columns([(2, 0)], 4, check=False)
    assert incidence_sum(single) == kernel([(2, 0)], 4).cardinality - 1


@pytest.mark.parametrize("n, k", [(4, 2), (6, 2), (8, 2), (9, 2), (4, 3)])
def test_incidence_matches_double_loop(n, k):
    rng = random.Random(n + 31 * k)
    for _ in range(10):
        cols = [tuple(rng.randrange(n) for _ in range(k)) for _ in range(rng.randint(1, 8))]
        lam = columns(cols, n, k, check=False)
        assert incidence_sum(lam) == oracles.incidence(cols, n, k)


def test_incidence_threshold():
    with pytest.raises(ThresholdExceeded):
        incidence_sum(columns([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 12), threshold=100)


def test_word_counts():
    c = word_counts(4, 2)
    assert (c.root, c.non_root, c.root_perp) == (12, 3, 4)
    c = word_counts(6, 2)
    assert (c.root, c.non_root, c.root_perp) == (24, 11, 6)


def test_quotient_exact():
    assert double_counting_quotient(12, 3, 4, 2) == Fraction(6)
    assert double_counting_quotient(1, 1, 1, 1) is None


def test_lower_bound_examples():
    exact, closed, notes = lower_bound(4, 2)
    assert exact == 6
    # the printed strict form m > 4 + 1 + 1 allows only m >= 7
    assert closed == 7
    exact, closed, notes = lower_bound(4, 3)
    assert exact == 9 and closed is None
    assert any("not an integer" in s for s in notes)
    exact, closed, _ = lower_bound(6, 2)
    assert (exact, closed) == (10, 8)
    assert lower_bound(8, 1)[0] == 3
    assert lower_bound(12, 1)[0] is None


def test_lower_bound_values():
    # frozen from the exact quotient with enumerated counts
    assert lower_bound(8, 2)[:2] == (12, 12)
    assert lower_bound(9, 2)[:2] == (11, 12)
    assert lower_bound(8, 3)[:2] == (18, 18)


def test_upper_bound_examples():
    assert upper_bound(4, 2) == 6
    assert upper_bound(6, 2) == 12
    assert upper_bound(8, 1) == 3
    assert upper_bound(12, 1) == 4
    assert upper_bound(9, 2, verify=True) == 12
    with pytest.raises(ShapeMismatch):
        upper_bound(12, 2)
    with pytest.raises(ShapeMismatch):
        lower_bound(12, 2)


def test_bounds_report_z4_flags_strict_conflict():
    r = bounds_report(4, 2)
    assert (r.lower_bound_exact, r.upper_bound, r.projective_bound) == (6, 6, 6)
    assert r.upper_bound_verified
    assert any(s.startswith("CONFLICT") for s in r.notes)


def test_bounds_report_z6_root_count_discrepancy():
    r = bounds_report(6, 2)
    assert r.root_words == 24 and r.root_words_formula == 30
    assert r.projective_bound == len(root_words_mod_units(6, 2)) == 12
    assert any("enumerated 24, closed form 30" in s for s in r.notes)
    d = r.to_dict()
    assert d["lower_bound_exact"] == 10 and d["lower_bound_closed_form"] == 8


def test_projective_bound_is_achievable():
    # all root words modulo units form a minimal code
    for n, k in [(4, 2), (8, 2), (9, 2), (6, 2)]:
        reps = root_words_mod_units(n, k)
        assert is_minimal_code(LinearCode(columns(reps, n, k))).verdict


@pytest.mark.parametrize("n, k", [(4, 2), (8, 2), (9, 2), (4, 3), (8, 3)])
def test_incidence_identity_and_inequality(n, k):
    """Root-word columns give m*(E-1) pairs; minimal ones need at least R(k-1) + NR*k."""
    counts = word_counts(n, k)
    reps = root_words_mod_units(n, k)
    rng = random.Random(n * k)
    for _ in range(20):
        cols = [rng.choice(reps) for _ in range(rng.randint(k, 3 * len(reps)))]
        lam = columns(cols, n, k, check=False)
        total = incidence_sum(lam)
        assert total == lam.m * (counts.root_perp - 1)
        if lam.m >= k and is_minimal_code(LinearCode(lam)).verdict:
            assert total >= counts.root * (k - 1) + counts.non_root * k
