import pytest
from hypothesis import given, settings, strategies as st

from mincodes.errors import DimensionMismatch, MatrixParseError, ThresholdExceeded
from mincodes.linalg import (
    enumerate_submodule,
    format_matrix_text,
    full_module,
    has_independent_subset,
    howell_form,
    inner_product,
    is_linearly_independent,
    is_submodule,
    kernel,
    membership,
    module_sum,
    parse_matrix_text,
    perp,
    span,
    submodule_equal,
    zero_submodule,
)

import oracles


@st.composite
def small_matrices(draw, max_n=12, max_k=3, max_rows=4):
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(1, max_k))
    rows = draw(st.lists(st.tuples(*[st.integers(0, n - 1)] * k), max_size=max_rows))
    return n, k, rows


@pytest.mark.parametrize(
    "v, w, n, expected",
    [((1, 2), (2, 1), 4, 0), ((1, 0), (0, 1), 4, 0), ((2, 3), (3, 2), 6, 0), ((1, 1), (1, 2), 5, 3)],
)
def test_inner_product(v, w, n, expected):
    assert inner_product(v, w, n) == expected


def test_inner_product_length_mismatch():
    with pytest.raises(DimensionMismatch):
        inner_product((1, 2), (1,), 4)


def test_howell_examples():
    assert howell_form([(1, 2), (0, 0)], 4).canon == ((1, 2),)
    s = howell_form([(2, 1), (0, 2)], 4)
    assert len(s.canon) == 2
    # (0,2) = 2*(2,1), so the span is just the 4 multiples of (2,1)
    assert s.cardinality == len(oracles.span([(2, 1), (0, 2)], 4, 2)) == 4
    empty = howell_form([], 4, 2)
    assert empty.cardinality == 1 and empty.is_zero


def test_submodule_equal_examples():
    assert submodule_equal(span([(2, 1)], 4), span([(2, 3)], 4))
    assert not submodule_equal(span([(1, 2)], 4), span([(2, 0)], 4))
    a = span([(1, 3), (2, 2)], 4)
    assert submodule_equal(a, a)


def test_membership_examples():
    assert membership((2, 2), span([(1, 1)], 4))
    assert not membership((1, 0), span([(2, 0)], 4))
    assert membership((3, 2), span([(3, 2)], 6))
    assert (3, 2) in kernel([(2, 3)], 6)


def test_kernel_examples():
    k12 = kernel([(1, 2)], 4)
    assert k12.cardinality == 4
    assert k12 == span([(2, 1)], 4)
    assert kernel([(2, 2)], 4).cardinality == 8
    assert kernel([(1, 0), (0, 1)], 4).is_zero


def test_independence_examples():
    assert is_linearly_independent([(1, 0), (0, 1)], 4)
    assert not is_linearly_independent([(2, 0)], 4)
    assert not is_linearly_independent([(1, 1), (1, 3)], 4)
    assert not is_linearly_independent([(2, 0), (0, 2)], 4)


def test_enumerate_examples():
    assert enumerate_submodule(span([(2, 1)], 4)) == [(0, 0), (0, 2), (2, 1), (2, 3)]
    assert enumerate_submodule(zero_submodule(4, 3)) == [(0, 0, 0)]
    assert len(enumerate_submodule(span([(3, 2)], 6))) == 6


def test_enumerate_threshold():
    with pytest.raises(ThresholdExceeded):
        enumerate_submodule(full_module(10, 4), threshold=100)


@settings(max_examples=300, deadline=None)
@given(small_matrices())
def test_span_matches_enumeration(data):
    n, k, rows = data
    s = howell_form(rows, n, k)
    expected = oracles.span(rows, n, k)
    assert s.cardinality == len(expected)
    assert set(enumerate_submodule(s)) == expected


@settings(max_examples=200, deadline=None)
@given(small_matrices())
def test_howell_idempotent_and_canonical(data):
    n, k, rows = data
    s = howell_form(rows, n, k)
    assert howell_form(s.canon, n, k).canon == s.canon
    # any generating set of the same module gives the same canon
    elems = sorted(oracles.span(rows, n, k))
    assert howell_form(elems, n, k).canon == s.canon
    pivots = [next(j for j, x in enumerate(r) if x) for r in s.canon]
    assert pivots == sorted(set(pivots))
    for r, j in zip(s.canon, pivots):
        assert n % r[j] == 0


@settings(max_examples=300, deadline=None)
@given(small_matrices())
def test_kernel_matches_enumeration(data):
    n, k, rows = data
    assert set(enumerate_submodule(kernel(rows, n, k))) == oracles.kernel(rows, n, k)


@settings(max_examples=200, deadline=None)
@given(small_matrices(), st.data())
def test_membership_matches_enumeration(mat, data):
    n, k, rows = mat
    x = data.draw(st.tuples(*[st.integers(0, n - 1)] * k))
    assert membership(x, howell_form(rows, n, k)) == (x in oracles.span(rows, n, k))


@settings(max_examples=200, deadline=None)
@given(small_matrices(max_rows=3))
def test_independence_matches_enumeration(data):
    n, k, rows = data
    assert is_linearly_independent(rows, n) == oracles.independent(rows, n)


@settings(max_examples=100, deadline=None)
@given(small_matrices(max_n=9))
def test_double_kernel_contains_span(data):
    n, k, rows = data
    s = howell_form(rows, n, k)
    # Z_n is quasi-Frobenius, so (S^perp)^perp = S
    assert perp(perp(s)) == s


@settings(max_examples=100, deadline=None)
@given(small_matrices(), st.data())
def test_sum_and_inclusion(mat, data):
    n, k, rows = mat
    other = data.draw(st.lists(st.tuples(*[st.integers(0, n - 1)] * k), max_size=2))
    a, b = howell_form(rows, n, k), howell_form(other, n, k)
    total = module_sum(a, b)
    assert is_submodule(a, total) and is_submodule(b, total)
    assert total == howell_form(list(rows) + list(other), n, k)


def test_has_independent_subset():
    assert has_independent_subset([(2, 0), (1, 1), (0, 1)], 4, 2)
    assert not has_independent_subset([(2, 0), (0, 2)], 4, 2)
    assert not has_independent_subset([(1, 1), (1, 3)], 4, 2)


def test_matrix_text_round_trip():
    rows = [(1, 0), (0, 1), (1, 3)]
    text = format_matrix_text(4, 2, rows)
    assert parse_matrix_text(text) == (4, 2, rows)
    commented = "# a comment\n4 2 2  # header\n1 0\n\n0 1 # e2\n"
    assert parse_matrix_text(commented) == (4, 2, [(1, 0), (0, 1)])


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "empty"),
        ("4 2\n1 0\n", "header"),
        ("4 2 2\n1 0\n", "announces 2 rows"),
        ("4 2 1\n1 0 1\n", "line 2"),
        ("4 2 1\n1 x\n", "column 2"),
        ("4 2 1\n7 0\n", "residue 7"),
    ],
)
def test_matrix_text_errors(text, fragment):
    with pytest.raises(MatrixParseError) as exc:
        parse_matrix_text(text)
    assert fragment in str(exc.value)
