from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylseries.exactpoly import (
    IntPoly,
    NotAUnitError,
    NotDivisibleError,
    TruncSeries,
    batch_charpoly,
    charpoly,
    dets_from_charpoly,
    exact_divide,
    invert_unit,
    poly_series,
)
from weylseries.groups import parse_descriptor, reflection_rep
from weylseries.oracle import _interpolated_charpoly, closure

small_ints = st.integers(min_value=-4, max_value=4)


def square(n):
    return st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)


def q(*coeffs):
    return IntPoly(coeffs, "q")


def test_intpoly_strips_and_degree():
    assert IntPoly((1, 2, 0, 0)).coeffs == (1, 2)
    assert IntPoly(()).degree == -1
    assert IntPoly((0, 0, 3)).degree == 2


def test_intpoly_arithmetic():
    a = q(1, 1)
    assert a * a == q(1, 2, 1)
    assert a**3 == q(1, 3, 3, 1)
    assert a - a == q()
    assert 1 - q(0, 1) == q(1, -1)
    assert q(1, 0, 1)(2) == 5
    assert q(1, 0, 1)(Fraction(1, 2)) == Fraction(5, 4)
    assert q(1, 1).substitute_power(3) == q(1, 0, 0, 1)


def test_variable_mismatch_rejected():
    with pytest.raises(ValueError):
        IntPoly((1, 1), "q") * IntPoly((1, 1), "s")


def test_charpoly_examples():
    assert charpoly([[1, 0], [0, 1]]) == IntPoly((1, -2, 1))
    assert charpoly([[0, 1], [1, 0]]) == IntPoly((-1, 0, 1))
    assert charpoly([[0, 0, 1], [1, 0, 0], [0, 1, 0]]) == IntPoly((-1, 0, 0, 1))
    assert charpoly([]) == IntPoly((1,))


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=4).flatmap(square))
def test_charpoly_matches_interpolation(M):
    assert charpoly(M).coeffs == _interpolated_charpoly(M)


@settings(max_examples=30, deadline=None)
@given(square(2), square(3))
def test_charpoly_block_diagonal_multiplies(A, B):
    M = [row + [0] * 3 for row in A] + [[0] * 2 + row for row in B]
    assert charpoly(M) == charpoly(A) * charpoly(B)


@settings(max_examples=30, deadline=None)
@given(st.lists(square(3), min_size=1, max_size=6))
def test_batch_charpoly_agrees(mats):
    batch = batch_charpoly(np.array(mats, dtype=np.int64))
    for M, row in zip(mats, batch):
        assert IntPoly(row) == charpoly(M)


def test_dets_examples():
    plus, minus, q2 = dets_from_charpoly(IntPoly((-1, 1)) ** 3)
    assert plus == q(1, 1) ** 3
    assert minus == q(1, -1) ** 3
    assert q2 == q(1, 0, -1) ** 3
    # 3-cycle on the A2 lattice
    plus, minus, q2 = dets_from_charpoly(IntPoly((1, 1, 1)))
    assert plus == q(1, -1, 1)
    assert minus == q(1, 1, 1)
    assert q2 == q(1, 0, 1, 0, 1)
    # times the central factor: det(1+qw) on the permutation module is 1+q^3
    assert plus * q(1, 1) == q(1, 0, 0, 1)
    # a reflection in B2
    assert dets_from_charpoly(IntPoly((-1, 0, 1)))[2] == q(1, 0, 0, 0, -1)


def test_dets_reject_non_monic():
    with pytest.raises(ValueError):
        dets_from_charpoly(IntPoly((1, 2)))


@pytest.mark.parametrize("group", ["A2", "B2", "G2", "A3", "B3"])
def test_dets_relations_on_weyl_elements(group):
    rep = reflection_rep(parse_descriptor(group))
    for w in closure(rep.generators, rep.rank):
        plus, minus, q2 = dets_from_charpoly(charpoly(w))
        assert q2 == minus.substitute_power(2)
        w2 = [[sum(w[i][k] * w[k][j] for k in range(rep.rank)) for j in range(rep.rank)] for i in range(rep.rank)]
        assert plus * minus == dets_from_charpoly(charpoly(w2))[1].substitute_power(2)


def test_exact_divide():
    assert exact_divide(q(1, 0, 0, 0, -1), q(1, 0, -1)) == q(1, 0, 1)
    with pytest.raises(NotDivisibleError, match="not divisible"):
        exact_divide(q(1, 0, 0, -1), q(1, 0, -1))


def test_invert_unit_geometric():
    inv = invert_unit(poly_series([1, -1], "q", 4))
    assert [inv[k] for k in range(6)] == [1, 1, 1, 1, 1, 0]


def test_invert_unit_rejects_non_units():
    with pytest.raises(NotAUnitError):
        invert_unit(poly_series([0, 1], "q", 4))
    s = TruncSeries.from_poly(IntPoly((1, 1), "s"), ("q", "s"), (4, None))
    with pytest.raises(NotAUnitError):
        invert_unit(s)


def test_truncation_never_extends():
    a = poly_series([1, 1], "q", 3)
    cube = a**5
    assert cube.shape == (4,)
    assert [cube[k] for k in range(4)] == [1, 5, 10, 10]
    with pytest.raises(ValueError):
        cube.truncate([5])


def test_substitute_equal():
    a = TruncSeries([[1, 2], [3, 4]], ("q", "s"))
    assert a.substitute_equal("q", "s").to_intpoly() == IntPoly((1, 5, 4), "q")


def test_scale_down_exact():
    a = poly_series([2, 4], "q")
    assert a.scale_down(2) == poly_series([1, 2], "q")
    with pytest.raises(NotDivisibleError):
        poly_series([2, 3], "q").scale_down(2)


def series2(data):
    return TruncSeries(np.array(data, dtype=object), ("q", "s"), (5, None))


coeff_grid = st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=7, max_size=7)


@settings(max_examples=40, deadline=None)
@given(coeff_grid, coeff_grid, coeff_grid)
def test_series_ring_axioms(a, b, c):
    A, B, C = series2(a), series2(b), series2(c)
    assert A * B == B * A
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert A + (B - A) == B


@settings(max_examples=40, deadline=None)
@given(st.lists(small_ints, min_size=1, max_size=6))
def test_inverse_is_inverse(tail):
    a = poly_series([1] + tail, "q", 8)
    assert a * invert_unit(a) == TruncSeries.constant(1, ("q",), (8,))
