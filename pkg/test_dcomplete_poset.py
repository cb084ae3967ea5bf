#!/usr/bin/env python3
"""
Tests for d-complete posets: interval search, D1-D3, top tree, rank,
coloring extension, hooks, W_P and the hook-product check.
"""

import sys
from fractions import Fraction

import networkx as nx
import pytest

from dcomplete_poset import (
    EXTENDED_TOP,
    ColoredPoset,
    ExtensionFailed,
    InconsistentChainLengths,
    InvalidSpec,
    ParityViolation,
    Poset,
    build_dk1_poset,
    build_poset,
    build_shape_poset,
    build_shifted_poset,
    build_tree_poset,
    cell_id,
    check_dcomplete,
    color_monomial,
    conjecture_check,
    conjecture_lhs,
    element_cell,
    enumerate_p_partitions,
    extend_coloring,
    find_dk_intervals,
    hook_monomial_dc,
    hook_monomials,
    parse_tree_spec,
    random_rooted_tree,
    rank,
    rooted_tree_series,
    top_tree,
    weight_W_P,
    weight_W_P_extended,
)
from qt_series import PRIME_ZERO, Monomial, QtPoint, f_eval, product_geometric, sample_qt_point
from tableaux import (
    Partition,
    StrictPartition,
    diagram_cells,
    enumerate_ppartitions,
    hook_monomial,
    lhs_series,
    partitions_of,
    strict_partitions_of,
    weight_W_shape,
    weight_W_shifted,
)

z = Monomial.var
PT = QtPoint(Fraction(1, 2), Fraction(1, 3))
DIAGONAL = QtPoint(Fraction(2, 5), Fraction(2, 5))


def as_sigma(array):
    return {cell_id(i, j): array[(i, j)] for i, j in array.cells()}


def test_double_tailed_diamonds():
    assert nx.is_isomorphic(build_dk1_poset(3).graph, build_shape_poset(Partition((2, 2))).graph)
    assert nx.is_isomorphic(build_dk1_poset(4).graph, build_shifted_poset(StrictPartition((3, 2, 1))).graph)
    for k in range(3, 7):
        poset = build_dk1_poset(k)
        assert len(poset) == 2 * k - 2
        assert len(poset.top_tree) == k
        intervals = find_dk_intervals(poset)
        assert [(i.bottom, i.top, i.k) for i in intervals if i.k == k] == [("b1", f"t{k - 2}", k)]


def test_top_trees_of_diagrams():
    poset = build_shape_poset(Partition((5, 4, 3, 1)))
    expected = {cell_id(1, j) for j in range(1, 6)} | {cell_id(i, 1) for i in range(1, 5)}
    assert poset.top_tree == expected
    shifted = build_shifted_poset(StrictPartition((7, 6, 3, 1)))
    assert shifted.top_tree == {cell_id(1, j) for j in range(1, 8)} | {cell_id(2, 2)}
    chain = ColoredPoset(["a", "b", "c"], [("c", "b"), ("b", "a")])
    assert chain.top_tree == {"a", "b", "c"}


def test_shifted_diagonal_colors():
    poset = build_shifted_poset(StrictPartition((7, 6, 3, 1)), two_color=True)
    assert [poset.color(cell_id(i, i)) for i in range(1, 5)] == [0, PRIME_ZERO, 0, PRIME_ZERO]
    merged = build_shifted_poset(StrictPartition((7, 6, 3, 1)), two_color=False)
    assert [merged.color(cell_id(i, i)) for i in range(1, 5)] == [0, 0, 0, 0]
    for i, j in diagram_cells(StrictPartition((7, 6, 3, 1))):
        if i < j:
            assert poset.color(cell_id(i, j)) == j - i


def test_shape_coloring_is_content():
    for size in range(1, 7):
        for parts in partitions_of(size):
            poset = build_shape_poset(Partition(parts))
            for element in poset.elements:
                cell = element_cell(element)
                assert poset.color(element) == cell.j - cell.i


def test_diagrams_and_trees_are_dcomplete():
    for size in range(1, 6):
        for parts in partitions_of(size):
            assert check_dcomplete(build_shape_poset(Partition(parts))).ok
    for size in range(1, 7):
        for parts in strict_partitions_of(size):
            assert check_dcomplete(build_shifted_poset(StrictPartition(parts))).ok
    for seed in range(5):
        assert check_dcomplete(random_rooted_tree(7, seed)).ok
    for k in (3, 4, 5):
        assert check_dcomplete(build_dk1_poset(k)).ok


def test_non_dcomplete_posets():
    vee = Poset(["w", "x", "y"], [("w", "x"), ("w", "y")])
    report = check_dcomplete(vee)
    assert not report.ok
    assert "2 maximal elements" in report.violations
    assert any(v.startswith("D1") for v in report.violations)
    twins = Poset(
        ["w1", "w2", "x", "y", "v"],
        [("w1", "x"), ("w1", "y"), ("w2", "x"), ("w2", "y"), ("x", "v"), ("y", "v")],
    )
    report = check_dcomplete(twins)
    assert not report.ok
    assert any(v.startswith("D3") for v in report.violations)
    with pytest.raises(ExtensionFailed):
        ColoredPoset(twins.elements, twins.covers)


def test_poset_validation():
    with pytest.raises(InvalidSpec):
        Poset(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(InvalidSpec):
        Poset(["a"], [("a", "z")])
    with pytest.raises(InvalidSpec):
        Poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    with pytest.raises(InvalidSpec):
        ColoredPoset(["a", "b"], [])


def test_rank():
    chain = Poset([1, 2, 3], [(3, 2), (2, 1)])
    assert rank(chain) == {1: 2, 2: 1, 3: 0}
    uneven = Poset(
        ["top", "x", "y", "z", "w"],
        [("x", "top"), ("y", "x"), ("y", "z"), ("z", "w"), ("w", "top")],
    )
    with pytest.raises(InconsistentChainLengths):
        rank(uneven)
    poset = build_dk1_poset(4)
    assert poset.ranks["t2"] - poset.ranks["b1"] == 4
    assert poset.ranks["x"] == poset.ranks["y"]


def test_extension_needs_a_bijection():
    poset = build_shape_poset(Partition((2, 2)))
    colors = {x: 0 for x in top_tree(poset)}
    with pytest.raises(ExtensionFailed):
        extend_coloring(poset, colors)
    with pytest.raises(ExtensionFailed):
        extend_coloring(poset, {cell_id(1, 1): 0})


def test_hooks_match_diagram_hooks():
    for size in range(1, 5):
        for parts in partitions_of(size):
            shape = Partition(parts)
            hooks = hook_monomials(build_shape_poset(shape))
            for i, j in diagram_cells(shape):
                assert hooks[cell_id(i, j)] == hook_monomial(shape, (i, j))
    for size in range(1, 6):
        for parts in strict_partitions_of(size):
            mu = StrictPartition(parts)
            hooks = hook_monomials(build_shifted_poset(mu, two_color=True))
            for i, j in diagram_cells(mu):
                assert hooks[cell_id(i, j)].rename(PRIME_ZERO, 0) == hook_monomial(mu, (i, j))
                assert hooks[cell_id(i, j)].is_genuine()


def test_tree_hooks_are_ideal_products():
    poset = build_tree_poset("(a(b)(c(d)))")
    assert hook_monomial_dc(poset, "a") == Monomial.product_of("abcd")
    assert hook_monomial_dc(poset, "c") == z("c") * z("d")
    assert hook_monomial_dc(poset, "b") == z("b")


@pytest.mark.parametrize("poset", [build_dk1_poset(5), build_shifted_poset(StrictPartition((4, 2, 1)))])
def test_rank_parity_law(poset):
    for x in poset.elements:
        for y in poset.above(x):
            gap = poset.ranks[y] - poset.ranks[x]
            if poset.colors_adjacent(poset.color(x), poset.color(y)):
                assert gap % 2 == 1
            elif poset.color(x) == poset.color(y):
                assert gap % 2 == 0


def test_tree_weight_example():
    poset = build_tree_poset("(a(b)(c(d)))")
    sigma = {"a": 1, "b": 3, "c": 2, "d": 4}
    expected = f_eval(2, 0, PT) * f_eval(1, 0, PT) * f_eval(2, 0, PT) * f_eval(1, 0, PT)
    assert weight_W_P(poset, sigma, PT) == expected
    with pytest.raises(ValueError):
        weight_W_P(poset, {"a": 2, "b": 1, "c": 2, "d": 2}, PT)


def test_weight_matches_diagram_weights():
    pt = sample_qt_point(4)
    for size in range(1, 5):
        for parts in partitions_of(size):
            shape = Partition(parts)
            poset = build_shape_poset(shape)
            for pi in enumerate_ppartitions(shape, 3):
                assert weight_W_P(poset, as_sigma(pi), pt) == weight_W_shape(pi, pt)
    for parts in [(2, 1), (3, 1), (3, 2), (3, 2, 1)]:
        mu = StrictPartition(parts)
        poset = build_shifted_poset(mu, two_color=True)
        for sigma in enumerate_ppartitions(mu, 4):
            assert weight_W_P(poset, as_sigma(sigma), pt) == weight_W_shifted(sigma, pt)


def test_merged_diagonal_cannot_weigh():
    poset = build_shifted_poset(StrictPartition((2, 1)), two_color=False)
    with pytest.raises(InvalidSpec):
        weight_W_P(poset, {x: 0 for x in poset.elements}, PT)


def test_weight_is_one_at_q_equal_t():
    poset = build_dk1_poset(4)
    for sigma in enumerate_p_partitions(poset, 4):
        assert weight_W_P(poset, sigma, DIAGONAL) == 1


@pytest.mark.parametrize(
    "poset",
    [build_dk1_poset(4), build_tree_poset("(a(b)(c(d)))"), build_shifted_poset(StrictPartition((3, 1)))],
)
def test_extended_form_agrees(poset):
    pt = sample_qt_point(6)
    extended = poset.extended()
    assert extended.v0 == EXTENDED_TOP
    for sigma in enumerate_p_partitions(poset, 4):
        assert weight_W_P_extended(poset, sigma, pt) == weight_W_P(poset, sigma, pt)


def test_parity_violation_is_reported():
    # w should carry the color of v
    poset = ColoredPoset(
        ["w", "x", "y", "v"],
        [("w", "x"), ("w", "y"), ("x", "v"), ("y", "v")],
        coloring={"v": "v", "x": "x", "y": "y", "w": "x"},
    )
    with pytest.raises(ParityViolation):
        weight_W_P(poset, {e: 0 for e in poset.elements}, PT)


def test_p_partition_enumeration():
    chain = ColoredPoset(["a", "b"], [("b", "a")])
    found = sorted((s["a"], s["b"]) for s in enumerate_p_partitions(chain, 2))
    assert found == [(0, 0), (0, 1), (0, 2), (1, 1)]
    assert color_monomial(chain, {"a": 1, "b": 2}) == z("a") * z("b", 2)


def test_single_element_conjecture():
    poset = ColoredPoset(["v"], [])
    lhs, count = conjecture_lhs(poset, PT, 5)
    assert count == 6
    assert conjecture_check(poset, PT, 5).passed


def test_dk1_at_q_equal_t_is_gansner():
    poset = build_dk1_poset(3)
    lhs, _ = conjecture_lhs(poset, DIAGONAL, 5)
    assert lhs == product_geometric(hook_monomials(poset).values(), 5)


@pytest.mark.parametrize("k, degree", [(3, 5), (4, 5), (5, 4)])
def test_conjecture_on_double_tailed_diamonds(k, degree):
    result = conjecture_check(build_dk1_poset(k), sample_qt_point(8), degree)
    assert result.passed, result.mismatch


@pytest.mark.parametrize("seed", range(20))
def test_rooted_trees(seed):
    pt = sample_qt_point(seed)
    poset = random_rooted_tree(3 + seed % 5, seed)
    assert len(poset) <= 7
    result = conjecture_check(poset, pt, 6)
    assert result.passed, result.mismatch
    lhs, _ = conjecture_lhs(poset, pt, 6)
    assert rooted_tree_series(poset, pt, 6) == lhs


@pytest.mark.parametrize("parts", [(2, 1), (3, 1)])
def test_shifted_conjecture_reduces_to_shifted_theorem(parts):
    mu = StrictPartition(parts)
    pt = sample_qt_point(9)
    poset = build_shifted_poset(mu, two_color=True)
    assert conjecture_check(poset, pt, 5).passed
    lhs, _ = conjecture_lhs(poset, pt, 5)
    assert lhs.substitute(PRIME_ZERO, 0) == lhs_series(mu, pt, 5, "W")


def test_tree_specs():
    nodes, covers = parse_tree_spec("(a(b)(c(d)))")
    assert nodes == ["a", "b", "c", "d"]
    assert covers == [("b", "a"), ("c", "a"), ("d", "c")]
    for bad in ("(a(b)", "(a)(b)", "a", "(a(a))"):
        with pytest.raises(InvalidSpec):
            parse_tree_spec(bad)
    assert random_rooted_tree(5, 3).elements == random_rooted_tree(5, 3).elements
    assert random_rooted_tree(5, 3).covers == random_rooted_tree(5, 3).covers


def test_build_poset_dispatch():
    assert len(build_poset("shape", "3,2")) == 5
    assert len(build_poset("shifted", (3, 1), two_color=True)) == 4
    assert len(build_poset("tree", "(r(s))")) == 2
    assert len(build_poset("dk1", 4)) == 6
    with pytest.raises(InvalidSpec):
        build_poset("shape", "2,3")
    with pytest.raises(InvalidSpec):
        build_poset("lattice", "1")


def test_subtree():
    poset = build_tree_poset("(a(b)(c(d)))")
    branch = poset.subtree("c")
    assert branch.v0 == "c"
    assert branch.elements == ["c", "d"]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
