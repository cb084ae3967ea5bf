#!/usr/bin/env python3
"""
Tests for diagrams, hooks, traces, weights and array enumeration.
"""

import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qt_series import Monomial, QtPoint, TruncatedSeries, f_eval, sample_qt_point
from tableaux import (
    Cell,
    CellOutsideDiagram,
    InfeasibleProfile,
    InvalidPartition,
    NTooSmall,
    Partition,
    PPartitionArray,
    Sign,
    StrictPartition,
    WeightKind,
    closed_form_hook_monomial,
    complement_and_epsilon,
    diagram_cells,
    enumerate_ppartitions,
    frobenius_split,
    glue_halves,
    glued_monomial,
    hook_cells,
    hook_monomial,
    interlaces,
    lhs_series,
    partitions_of,
    shifted_hook_cells,
    shifted_membership,
    strict_partitions_of,
    tau_factors,
    tilde_z,
    trace_monomial,
    traces_and_profile,
    weight_V_shifted,
    weight_W_shape,
    weight_W_shifted,
)

z = Monomial.var
PT = QtPoint(Fraction(1, 2), Fraction(1, 3))
DIAGONAL = QtPoint(Fraction(3, 5), Fraction(3, 5))
SAMPLE_SHAPE = StrictPartition((6, 5, 2))
SAMPLE_ROWS = [[0, 0, 1, 2, 3, 3], [1, 2, 3, 3, 3], [2, 4]]


@st.composite
def partitions(draw, max_size=5):
    size = draw(st.integers(min_value=0, max_value=max_size))
    choices = list(partitions_of(size))
    return Partition(draw(st.sampled_from(choices)))


@st.composite
def strict_partitions(draw, max_size=7):
    size = draw(st.integers(min_value=1, max_value=max_size))
    choices = list(strict_partitions_of(size))
    return StrictPartition(draw(st.sampled_from(choices)))


def test_partition_validation():
    assert Partition((3, 1, 0)).parts == (3, 1)
    assert Partition.parse("4,2,2").conjugate() == Partition((3, 3, 1, 1))
    with pytest.raises(InvalidPartition):
        Partition((1, 2))
    with pytest.raises(InvalidPartition):
        StrictPartition((2, 2))


@settings(max_examples=30, deadline=None)
@given(partitions(max_size=8))
def test_conjugate_is_an_involution(shape):
    assert shape.conjugate().conjugate() == shape


def test_diagram_cells():
    assert diagram_cells(Partition((1,))) == [Cell(1, 1)]
    assert diagram_cells(StrictPartition((3, 1))) == [Cell(1, 1), Cell(1, 2), Cell(1, 3), Cell(2, 2)]
    assert len(diagram_cells(Partition((2, 2)))) == 4
    assert diagram_cells(Partition()) == []


def test_hook_cells_examples():
    assert hook_cells(Partition((2, 2)), (1, 1)) == {Cell(1, 1), Cell(1, 2), Cell(2, 1)}
    mu = StrictPartition((3, 1))
    assert shifted_hook_cells(mu, (1, 2)) == {Cell(1, 2), Cell(1, 3), Cell(2, 2)}
    assert shifted_hook_cells(mu, (1, 1)) == {Cell(1, 1), Cell(1, 2), Cell(1, 3), Cell(2, 2)}
    with pytest.raises(CellOutsideDiagram):
        hook_cells(Partition((2, 2)), (3, 1))


def test_hook_monomial_examples():
    assert hook_monomial(Partition((2,)), (1, 1)) == z(0) * z(1)
    assert hook_monomial(StrictPartition((3, 1)), (1, 1)) == z(0, 2) * z(1) * z(2)
    mu = StrictPartition((3, 1))
    assert closed_form_hook_monomial(mu, (1, 2), 3) == tilde_z(3)


def test_tilde_z_and_epsilon():
    assert tilde_z(0) == Monomial()
    assert tilde_z(2) == z(0) * z(1)
    complement, signs = complement_and_epsilon(SAMPLE_SHAPE, 6)
    assert complement == StrictPartition((4, 3, 1))
    assert "".join(s.value for s in signs) == "-+--++"
    assert signs[1] is Sign.PLUS
    with pytest.raises(NTooSmall):
        complement_and_epsilon(SAMPLE_SHAPE, 5)


def test_closed_form_agrees_with_hooks_exhaustively():
    for size in range(7):
        for parts in partitions_of(size):
            shape = Partition(parts)
            bound = max(shape.part(1), shape.conjugate().part(1))
            for n in (bound, bound + 2):
                for cell in diagram_cells(shape):
                    assert closed_form_hook_monomial(shape, cell, n) == hook_monomial(shape, cell)
    for size in range(1, 8):
        for parts in strict_partitions_of(size):
            mu = StrictPartition(parts)
            for n in (mu.part(1), mu.part(1) + 1):
                for cell in diagram_cells(mu):
                    assert closed_form_hook_monomial(mu, cell, n) == hook_monomial(mu, cell)


@settings(max_examples=40, deadline=None)
@given(strict_partitions(), st.integers(min_value=0, max_value=2))
def test_shifted_membership_law(mu, extra):
    n = mu.part(1) + extra
    r = mu.length
    cells = set(diagram_cells(mu))
    for i in range(1, r + 1):
        for j in range(r + 1, n + 1):
            assert ((i, j) in cells) == shifted_membership(mu, n, i, j)


def test_traces_of_sample_array():
    sigma = PPartitionArray.from_rows(SAMPLE_SHAPE, SAMPLE_ROWS)
    data = traces_and_profile(sigma, 6)
    assert data.trace(0) == (2, 1, 0)
    assert data.trace(1) == (4, 2, 0)
    assert data.trace(4) == (3, 3)
    assert data.trace(6) == ()
    assert data.profile == Partition((2, 1))
    _, signs = complement_and_epsilon(SAMPLE_SHAPE, 6)
    for k, sign in enumerate(signs, 1):
        before, after = data.trace(k - 1), data.trace(k)
        if sign is Sign.PLUS:
            assert interlaces(before, after)
        else:
            assert interlaces(after, before)


def test_trace_monomial():
    assert trace_monomial(PPartitionArray.from_rows(Partition((2,)), [[0, 0]])) == Monomial()
    assert trace_monomial(PPartitionArray.from_rows(Partition((2,)), [[1, 2]])) == z(0) * z(1, 2)
    sigma = PPartitionArray.from_rows(SAMPLE_SHAPE, SAMPLE_ROWS)
    monomial = trace_monomial(sigma)
    assert monomial.degree == sigma.total == 27
    assert monomial.exponent(0) == 3


def test_weight_single_cell():
    for n in range(5):
        pi = PPartitionArray.from_rows(Partition((1,)), [[n]])
        assert weight_W_shape(pi, PT) == f_eval(n, 0, PT)


def test_weights_are_one_at_q_equal_t():
    for sigma in enumerate_ppartitions(StrictPartition((3, 1)), 4):
        assert weight_W_shifted(sigma, DIAGONAL) == 1
        assert weight_V_shifted(sigma, DIAGONAL) == 1
    for pi in enumerate_ppartitions(Partition((2, 2)), 4):
        assert weight_W_shape(pi, DIAGONAL) == 1


@pytest.mark.parametrize("parts", [(2, 1), (3, 1), (3, 2, 1), (4, 2, 1)])
def test_W_equals_scaled_V(parts):
    mu = StrictPartition(parts)
    pt = sample_qt_point(7)
    for sigma in enumerate_ppartitions(mu, 5):
        tau = traces_and_profile(sigma, mu.part(1)).profile
        b, b_el, _ = tau_factors(tau, pt)
        assert weight_W_shifted(sigma, pt) == b_el / b * weight_V_shifted(sigma, pt)


def test_tau_factors():
    assert tau_factors(Partition(), PT) == (1, 1, 0)
    b, b_el, odd = tau_factors(Partition((1,)), PT)
    assert b == (1 - PT.t) / (1 - PT.q) == b_el
    assert odd == 1
    assert tau_factors(Partition((2, 1)), PT)[2] == 1
    b, _, _ = tau_factors(Partition((1, 1)), PT)
    q, t = PT.q, PT.t
    assert b == (1 - t) * (1 - t ** 2) / ((1 - q) * (1 - q * t))


def test_enumeration_examples():
    arrays = list(enumerate_ppartitions(Partition((1,)), 3))
    assert [a.rows() for a in arrays] == [[[0]], [[1]], [[2]], [[3]]]
    pairs = sorted(tuple(a.rows()[0]) for a in enumerate_ppartitions(Partition((2,)), 2))
    assert pairs == [(0, 0), (0, 1), (0, 2), (1, 1)]
    assert list(enumerate_ppartitions(StrictPartition((2, 1)), 2, Partition((1, 1)))) == []
    with pytest.raises(InfeasibleProfile):
        list(enumerate_ppartitions(StrictPartition((2, 1)), 1, Partition((1, 1))))
    with pytest.raises(InfeasibleProfile):
        list(enumerate_ppartitions(StrictPartition((2,)), 4, Partition((1, 1))))


def test_enumeration_matches_brute_force():
    shape = Partition((2, 2))
    found = {tuple(map(tuple, a.rows())) for a in enumerate_ppartitions(shape, 4)}
    expected = set()
    for a in range(5):
        for b in range(5):
            for c in range(5):
                for d in range(5):
                    if a <= b and a <= c and b <= d and c <= d and a + b + c + d <= 4:
                        expected.add(((a, b), (c, d)))
    assert found == expected


def test_profiles_are_partitions():
    for sigma in enumerate_ppartitions(StrictPartition((4, 2, 1)), 5):
        raw = traces_and_profile(sigma, 4).trace(0)
        assert list(raw) == sorted(raw, reverse=True)


def test_lhs_series_examples():
    series = lhs_series(Partition((1,)), None, 4, WeightKind.UNWEIGHTED)
    assert series == TruncatedSeries({z(0, n): 1 for n in range(5)}, 4)
    series = lhs_series(Partition((2,)), None, 2, "unweighted")
    expected = TruncatedSeries({Monomial(): 1, z(1): 1, z(1, 2): 1, z(0) * z(1): 1}, 2)
    assert series == expected
    for shape in (Partition((2, 1)), StrictPartition((3, 1))):
        assert lhs_series(shape, DIAGONAL, 4, "W") == lhs_series(shape, None, 4, "unweighted")


def test_frobenius_split():
    assert frobenius_split(Partition((1,))) == (1, StrictPartition((1,)), StrictPartition((1,)))
    assert frobenius_split(Partition((2, 2))) == (2, StrictPartition((2, 1)), StrictPartition((2, 1)))
    assert frobenius_split(Partition((5, 4, 3, 1))) == (3, StrictPartition((5, 3, 1)), StrictPartition((4, 2, 1)))


def test_gluing_law():
    pt = sample_qt_point(11)
    for size in range(1, 5):
        for parts in partitions_of(size):
            shape = Partition(parts)
            for pi in enumerate_ppartitions(shape, 4):
                sigma, rho, mu, nu = glue_halves(pi)
                tau = traces_and_profile(sigma, mu.part(1)).profile
                assert traces_and_profile(rho, nu.part(1)).profile == tau
                b, _, _ = tau_factors(tau, pt)
                glued = weight_V_shifted(sigma, pt) * weight_V_shifted(rho, pt) / b
                assert weight_W_shape(pi, pt) == glued
                assert glued_monomial(sigma, rho) == trace_monomial(pi)


def test_any_N_gives_the_same_traces():
    sigma = PPartitionArray.from_rows(StrictPartition((3, 1)), [[0, 1, 2], [1]])
    short = traces_and_profile(sigma, 3)
    long = traces_and_profile(sigma, 5)
    assert long.traces[:4] == short.traces
    assert long.trace(5) == ()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
