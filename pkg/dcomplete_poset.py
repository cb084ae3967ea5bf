#!/usr/bin/env python3
"""
d-Complete Posets
Hasse diagrams on networkx, d_k-interval detection, the D1-D3 checks, top
tree and rank, coloring extension, inductive hook monomials, the weight W_P
and the hook-product check over P-partitions.
"""

from __future__ import annotations

import logging
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from macdonald import IdentityResult, compare_series
from qt_series import (
    PRIME_ZERO,
    Label,
    Monomial,
    QtPoint,
    TruncatedSeries,
    F_series,
    f_eval,
    label_key,
    product_F,
)
from tableaux import (
    Cell,
    Partition,
    StrictPartition,
    diagram_cells,
    enumerate_order_reversing,
    in_diagram,
)

logger = logging.getLogger(__name__)

Element = Hashable
EXTENDED_TOP = "1^"


class InvalidSpec(ValueError):
    pass


class InconsistentChainLengths(ValueError):
    pass


class ExtensionFailed(ValueError):
    pass


class AmbiguousHook(ValueError):
    pass


class ParityViolation(ValueError):
    pass


def element_key(element: Element):
    return label_key(element) if isinstance(element, (int, str)) else (3, 0, str(element))


def cell_id(i: int, j: int) -> str:
    return f"{i},{j}"


def element_cell(element: str) -> Cell:
    i, j = element.split(",")
    return Cell(int(i), int(j))


# Posets

class Poset:
    """Finite poset given by its cover relation; edges run from lower to upper."""

    def __init__(self, elements: Iterable[Element], covers: Iterable[Tuple[Element, Element]]):
        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(elements)
        for lower, upper in covers:
            if lower not in self.graph or upper not in self.graph:
                raise InvalidSpec(f"Cover ({lower}, {upper}) names an unknown element")
            if lower == upper:
                raise InvalidSpec(f"Element {lower} cannot cover itself")
            self.graph.add_edge(lower, upper)
        if not nx.is_directed_acyclic_graph(self.graph):
            raise InvalidSpec("Cover relation has a cycle")
        reduced = nx.transitive_reduction(self.graph)
        if reduced.number_of_edges() != self.graph.number_of_edges():
            extra = sorted(set(self.graph.edges()) - set(reduced.edges()), key=lambda e: (element_key(e[0]), element_key(e[1])))
            raise InvalidSpec(f"{extra[0]} is implied by other covers and is not a cover")
        self.closure = nx.transitive_closure_dag(self.graph)

    @property
    def elements(self) -> List[Element]:
        return sorted(self.graph.nodes, key=element_key)

    @property
    def covers(self) -> List[Tuple[Element, Element]]:
        return sorted(self.graph.edges, key=lambda e: (element_key(e[0]), element_key(e[1])))

    def __len__(self) -> int:
        return self.graph.number_of_nodes()

    def __contains__(self, element: Element) -> bool:
        return element in self.graph

    def less(self, x: Element, y: Element) -> bool:
        return self.closure.has_edge(x, y)

    def leq(self, x: Element, y: Element) -> bool:
        return x == y or self.closure.has_edge(x, y)

    def comparable(self, x: Element, y: Element) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def upper_covers(self, x: Element) -> List[Element]:
        return sorted(self.graph.successors(x), key=element_key)

    def lower_covers(self, x: Element) -> List[Element]:
        return sorted(self.graph.predecessors(x), key=element_key)

    def above(self, x: Element) -> set:
        return set(self.closure.successors(x))

    def below(self, x: Element) -> set:
        return set(self.closure.predecessors(x))

    def interval(self, w: Element, v: Element) -> FrozenSet[Element]:
        if not self.leq(w, v):
            return frozenset()
        return frozenset({w, v} | (self.above(w) & self.below(v)))

    def maximal_elements(self) -> List[Element]:
        return [x for x in self.elements if not self.graph.out_degree(x)]

    def is_connected(self) -> bool:
        return len(self) > 0 and nx.is_weakly_connected(self.graph)

    def maximum(self) -> Element:
        tops = self.maximal_elements()
        if len(tops) != 1:
            raise InvalidSpec(f"Expected a unique maximal element, found {len(tops)}")
        return tops[0]

    def hasse(self, elements: Iterable[Element]) -> nx.DiGraph:
        return self.graph.subgraph(elements)


def dk1_template(k: int, minus: bool = False) -> nx.DiGraph:
    """
    Hasse diagram of the double-tailed diamond d_k(1): b1 < ... < b_{k-2} < x, y < t1 < ... < t_{k-2}.

    With ``minus`` the top t_{k-2} is removed.
    """
    if k < 3:
        raise ValueError(f"d_k(1) needs k >= 3, got {k}")
    tail = [f"b{i}" for i in range(1, k - 1)]
    head = [f"t{i}" for i in range(1, k - 1)]
    if minus:
        head = head[:-1]
    graph = nx.DiGraph()
    graph.add_nodes_from(tail + ["x", "y"] + head)
    graph.add_edges_from(zip(tail, tail[1:]))
    graph.add_edges_from([(tail[-1], "x"), (tail[-1], "y")])
    if head:
        graph.add_edges_from([("x", head[0]), ("y", head[0])])
        graph.add_edges_from(zip(head, head[1:]))
    return graph


@dataclass(frozen=True)
class DkInterval:
    bottom: Element
    top: Element
    sides: Tuple[Element, Element]
    k: int
    elements: FrozenSet[Element] = field(compare=False)


@dataclass(frozen=True)
class DkMinusInterval:
    """A d_k^- interval; for k = 3 it is the triple (w; x, y) and ``top`` is None."""

    bottom: Element
    top: Optional[Element]
    maxima: Tuple[Element, ...]
    k: int
    elements: FrozenSet[Element] = field(compare=False)


def _sides(poset: Poset, elements: Iterable[Element]) -> Tuple[Element, Element]:
    members = sorted(elements, key=element_key)
    for idx, x in enumerate(members):
        for y in members[idx + 1:]:
            if not poset.comparable(x, y):
                return (x, y)
    raise ValueError("Interval has no incomparable pair")


def find_dk_intervals(poset: Poset) -> List[DkInterval]:
    found = []
    templates: Dict[int, nx.DiGraph] = {}
    for w in poset.elements:
        for v in sorted(poset.above(w), key=element_key):
            members = poset.interval(w, v)
            size = len(members)
            if size < 4 or size % 2:
                continue
            k = (size + 2) // 2
            template = templates.setdefault(k, dk1_template(k))
            if nx.is_isomorphic(poset.hasse(members), template):
                found.append(DkInterval(w, v, _sides(poset, members), k, members))
    return found


def find_dk_minus_intervals(poset: Poset) -> List[DkMinusInterval]:
    found = []
    for w in poset.elements:
        ups = poset.upper_covers(w)
        for idx, x in enumerate(ups):
            for y in ups[idx + 1:]:
                found.append(DkMinusInterval(w, None, (x, y), 3, frozenset({w, x, y})))
    templates: Dict[int, nx.DiGraph] = {}
    for w in poset.elements:
        for v in sorted(poset.above(w), key=element_key):
            members = poset.interval(w, v)
            size = len(members)
            if size < 5 or size % 2 == 0:
                continue
            k = (size + 3) // 2
            template = templates.setdefault(k, dk1_template(k, minus=True))
            if nx.is_isomorphic(poset.hasse(members), template):
                found.append(DkMinusInterval(w, v, (v,), k, members))
    return found


@dataclass
class DcompleteReport:
    ok: bool
    violations: List[str]
    intervals: int = 0

    def to_dict(self) -> Dict[str, object]:
        return {"ok": self.ok, "violations": list(self.violations), "intervals": self.intervals}


def check_dcomplete(poset: Poset) -> DcompleteReport:
    """Check connectivity, a unique maximum and D1-D3 by exhaustive interval search."""
    violations: List[str] = []
    if not poset.is_connected():
        violations.append("Hasse diagram is not connected")
    tops = poset.maximal_elements()
    if len(tops) != 1:
        violations.append(f"{len(tops)} maximal elements")
    full = find_dk_intervals(poset)
    minus = find_dk_minus_intervals(poset)
    for interval in minus:
        extended = any(
            j.k == interval.k and j.bottom == interval.bottom and interval.elements < j.elements
            for j in full
        )
        if not extended:
            violations.append(f"D1: d_{interval.k}^- interval at {interval.bottom} below {interval.maxima} does not extend")
    for interval in full:
        for u in poset.lower_covers(interval.top):
            if u not in interval.elements:
                violations.append(f"D2: top {interval.top} of a d_{interval.k} interval covers {u} outside it")
    groups: Dict[Tuple[int, FrozenSet[Element]], set] = {}
    for interval in minus:
        groups.setdefault((interval.k, interval.elements - {interval.bottom}), set()).add(interval.bottom)
    for (k, rest), bottoms in groups.items():
        if len(bottoms) > 1:
            violations.append(f"D3: d_{k}^- intervals over {sorted(rest, key=element_key)} differ only in their bottoms")
    logger.debug(f"Checked {len(poset)} elements: {len(full)} d_k and {len(minus)} d_k^- intervals")
    return DcompleteReport(not violations, violations, len(full) + len(minus))


def top_tree(poset: Poset) -> FrozenSet[Element]:
    """Elements x such that x and everything above it has at most one upper cover."""
    poset.maximum()
    single = {x for x in poset.elements if poset.graph.out_degree(x) <= 1}
    tree = frozenset(x for x in single if poset.above(x) <= single)
    if not nx.is_tree(poset.hasse(tree).to_undirected()):
        raise InvalidSpec("Top tree is not a tree")
    return tree


def rank(poset: Poset) -> Dict[Element, int]:
    """r(v0) = longest depth, decreasing by one along every cover downwards."""
    top = poset.maximum()
    depth: Dict[Element, int] = {top: 0}
    for x in reversed(list(nx.topological_sort(poset.graph))):
        if x == top:
            continue
        candidates = {depth[u] + 1 for u in poset.graph.successors(x)}
        if len(candidates) != 1:
            raise InconsistentChainLengths(f"Saturated chains from {x} to {top} have lengths {sorted(candidates)}")
        depth[x] = candidates.pop()
    deepest = max(depth.values())
    return {x: deepest - d for x, d in depth.items()}


def extend_coloring(poset: Poset, top_tree_colors: Dict[Element, Label]) -> Dict[Element, Label]:
    """Extend a bijective coloring of the top tree by c(w) = c(v) on every d_k-interval [w,v]."""
    tree = top_tree(poset)
    if set(top_tree_colors) != set(tree):
        raise ExtensionFailed(f"Top tree colors must cover exactly {sorted(tree, key=element_key)}")
    if len(set(top_tree_colors.values())) != len(tree):
        raise ExtensionFailed("Top tree colors are not a bijection")
    ranks = rank(poset)
    by_bottom: Dict[Element, List[DkInterval]] = {}
    intervals = find_dk_intervals(poset)
    for interval in intervals:
        by_bottom.setdefault(interval.bottom, []).append(interval)
    coloring = dict(top_tree_colors)
    for w in sorted(poset.elements, key=lambda x: (-ranks[x], element_key(x))):
        if w in coloring:
            continue
        candidates = {coloring[i.top] for i in by_bottom.get(w, []) if i.top in coloring}
        if len(candidates) != 1:
            raise ExtensionFailed(f"Element {w} gets {len(candidates)} candidate colors")
        coloring[w] = candidates.pop()
    problems = coloring_violations(poset, coloring, intervals)
    if problems:
        raise ExtensionFailed(problems[0])
    return coloring


def coloring_violations(poset: Poset, coloring: Dict[Element, Label], intervals: Optional[List[DkInterval]] = None) -> List[str]:
    problems = []
    members = poset.elements
    for idx, x in enumerate(members):
        for y in members[idx + 1:]:
            if not poset.comparable(x, y) and coloring[x] == coloring[y]:
                problems.append(f"C1: incomparable {x}, {y} share color {coloring[x]}")
    for lower, upper in poset.covers:
        if coloring[lower] == coloring[upper]:
            problems.append(f"C2: {upper} covers {lower} with the same color")
    for w in members:
        for v in poset.above(w):
            chain = poset.interval(w, v)
            if all(poset.comparable(a, b) for a in chain for b in chain):
                colors = [coloring[c] for c in chain]
                if len(set(colors)) != len(colors):
                    problems.append(f"C3: chain [{w}, {v}] repeats a color")
    for interval in intervals if intervals is not None else find_dk_intervals(poset):
        if coloring[interval.bottom] != coloring[interval.top]:
            problems.append(f"C4: d_{interval.k} interval [{interval.bottom}, {interval.top}] changes color")
    return problems


class ColoredPoset(Poset):
    """
    Connected poset with a unique maximum v0, its rank, top tree and coloring.

    Without an explicit coloring the top tree is colored by its own element
    ids and extended to all of P.
    """

    def __init__(
        self,
        elements: Iterable[Element],
        covers: Iterable[Tuple[Element, Element]],
        top_tree_colors: Optional[Dict[Element, Label]] = None,
        coloring: Optional[Dict[Element, Label]] = None,
    ):
        super().__init__(elements, covers)
        if not self.is_connected():
            raise InvalidSpec("Poset is not connected")
        self.v0 = self.maximum()
        self.ranks = rank(self)
        self.top_tree = top_tree(self)
        if coloring is not None:
            if set(coloring) != set(self.graph.nodes):
                raise InvalidSpec("Coloring must assign a color to every element")
            self.coloring = dict(coloring)
        else:
            colors = top_tree_colors if top_tree_colors is not None else {x: str(x) for x in self.top_tree}
            self.coloring = extend_coloring(self, colors)
        tree_colors = [self.coloring[x] for x in self.top_tree]
        self.tree_element: Optional[Dict[Label, Element]] = None
        if len(set(tree_colors)) == len(tree_colors):
            self.tree_element = {self.coloring[x]: x for x in self.top_tree}

    def color(self, x: Element) -> Label:
        return self.coloring[x]

    def colors_adjacent(self, a: Label, b: Label) -> bool:
        if self.tree_element is None:
            raise InvalidSpec("Top tree coloring is not a bijection; color adjacency is undefined")
        x, y = self.tree_element.get(a), self.tree_element.get(b)
        if x is None or y is None:
            return False
        return self.graph.has_edge(x, y) or self.graph.has_edge(y, x)

    def subtree(self, v: Element) -> "ColoredPoset":
        """The principal order ideal below v with the inherited coloring."""
        members = self.below(v) | {v}
        covers = [(a, b) for a, b in self.covers if a in members and b in members]
        return ColoredPoset(members, covers, coloring={x: self.coloring[x] for x in members})

    def extended(self) -> "ColoredPoset":
        """P with a new maximum above v0 carrying its own color."""
        if EXTENDED_TOP in self.graph:
            raise InvalidSpec(f"Element id {EXTENDED_TOP!r} is reserved")
        coloring = dict(self.coloring)
        coloring[EXTENDED_TOP] = EXTENDED_TOP
        return ColoredPoset(
            list(self.graph.nodes) + [EXTENDED_TOP],
            self.covers + [(self.v0, EXTENDED_TOP)],
            coloring=coloring,
        )

    def to_spec(self) -> Dict[str, object]:
        return {
            "elements": self.elements,
            "covers": [list(c) for c in self.covers],
            "top_tree_colors": {str(x): self.coloring[x] for x in sorted(self.top_tree, key=element_key)},
        }


# Builders

def build_shape_poset(shape: Partition) -> ColoredPoset:
    cells = diagram_cells(shape)
    covers = [
        (cell_id(i, j), cell_id(k, l))
        for i, j in cells
        for k, l in ((i, j - 1), (i - 1, j))
        if in_diagram(shape, k, l)
    ]
    colors = {cell_id(i, j): j - i for i, j in cells if i == 1 or j == 1}
    return ColoredPoset([cell_id(i, j) for i, j in cells], covers, top_tree_colors=colors)


def build_shifted_poset(mu: StrictPartition, two_color: bool = True) -> ColoredPoset:
    """S(mu) with diagonal colors 0 on odd rows and 0' on even rows, or all 0 without ``two_color``."""
    cells = diagram_cells(mu)
    covers = [
        (cell_id(i, j), cell_id(k, l))
        for i, j in cells
        for k, l in ((i, j - 1), (i - 1, j))
        if in_diagram(mu, k, l)
    ]
    colors: Dict[Element, Label] = {cell_id(1, j): j - 1 for j in range(1, mu.part(1) + 1)}
    if mu.length >= 2:
        colors[cell_id(2, 2)] = PRIME_ZERO
    poset = ColoredPoset([cell_id(i, j) for i, j in cells], covers, top_tree_colors=colors)
    if two_color:
        return poset
    merged = {x: 0 if c == PRIME_ZERO else c for x, c in poset.coloring.items()}
    return ColoredPoset(poset.elements, poset.covers, coloring=merged)


_TREE_TOKEN = re.compile(r"\s*(\(|\)|[^()\s]+)")


def parse_tree_spec(spec: str) -> Tuple[List[str], List[Tuple[str, str]]]:
    """Parse "(a(b)(c(d)))" into nodes and (child, parent) covers; the outer node is the root."""
    tokens = _TREE_TOKEN.findall(spec)
    if "".join(tokens) != re.sub(r"\s+", "", spec):
        raise InvalidSpec(f"Unreadable tree spec {spec!r}")
    nodes: List[str] = []
    covers: List[Tuple[str, str]] = []
    pos = 0

    def node(parent: Optional[str]) -> None:
        nonlocal pos
        if pos + 1 >= len(tokens) or tokens[pos] != "(" or tokens[pos + 1] in "()":
            raise InvalidSpec(f"Expected '(name' at token {pos} of {spec!r}")
        name = tokens[pos + 1]
        if name in nodes:
            raise InvalidSpec(f"Node {name!r} appears twice in {spec!r}")
        nodes.append(name)
        if parent is not None:
            covers.append((name, parent))
        pos += 2
        while pos < len(tokens) and tokens[pos] == "(":
            node(name)
        if pos >= len(tokens) or tokens[pos] != ")":
            raise InvalidSpec(f"Missing ')' after {name!r} in {spec!r}")
        pos += 1

    node(None)
    if pos != len(tokens):
        raise InvalidSpec(f"Trailing tokens in {spec!r}")
    return nodes, covers


def build_tree_poset(spec: str) -> ColoredPoset:
    nodes, covers = parse_tree_spec(spec)
    return ColoredPoset(nodes, covers)


def random_rooted_tree(size: int, seed: int) -> ColoredPoset:
    """Recursive random tree on n0..n{size-1} rooted at n0; deterministic per seed."""
    if size < 1:
        raise InvalidSpec("A rooted tree needs at least one node")
    rng = random.Random(seed)
    nodes = [f"n{i}" for i in range(size)]
    covers = [(nodes[i], nodes[rng.randrange(i)]) for i in range(1, size)]
    return ColoredPoset(nodes, covers)


def build_dk1_poset(k: int) -> ColoredPoset:
    template = dk1_template(k)
    return ColoredPoset(list(template.nodes), list(template.edges))


def _coerce(cls, spec):
    if isinstance(spec, cls):
        return spec
    if isinstance(spec, str):
        return cls.parse(spec)
    return cls(tuple(spec))


def build_poset(kind: str, spec: Union[str, int, Sequence[int]], two_color: bool = False) -> ColoredPoset:
    try:
        if kind == "shape":
            return build_shape_poset(_coerce(Partition, spec))
        if kind == "shifted":
            return build_shifted_poset(_coerce(StrictPartition, spec), two_color)
        if kind == "tree":
            return build_tree_poset(str(spec))
        if kind == "dk1":
            return build_dk1_poset(int(spec))
    except InvalidSpec:
        raise
    except ValueError as exc:
        raise InvalidSpec(f"Bad {kind} spec {spec!r}: {exc}") from exc
    raise InvalidSpec(f"Unknown poset kind {kind!r}")


# Hooks, weights and the hook-product check

def hook_monomials(poset: ColoredPoset) -> Dict[Element, Monomial]:
    """Hook monomials computed upwards: a product over the ideal, or z[H(x)] z[H(y)] / z[H(w)] at d_k tops."""
    by_top: Dict[Element, List[DkInterval]] = {}
    for interval in find_dk_intervals(poset):
        by_top.setdefault(interval.top, []).append(interval)
    hooks: Dict[Element, Monomial] = {}
    for v in sorted(poset.elements, key=lambda x: (poset.ranks[x], element_key(x))):
        intervals = by_top.get(v)
        if not intervals:
            hooks[v] = Monomial.product_of(poset.color(w) for w in poset.below(v) | {v})
            continue
        candidates = set()
        for interval in intervals:
            x, y = interval.sides
            candidates.add(hooks[x] * hooks[y] / hooks[interval.bottom])
        if len(candidates) != 1:
            raise AmbiguousHook(f"{len(candidates)} different hook monomials at {v}")
        monomial = candidates.pop()
        if not monomial.is_genuine():
            raise AmbiguousHook(f"Hook monomial {monomial!r} at {v} has a negative exponent")
        hooks[v] = monomial
    return hooks


def hook_monomial_dc(poset: ColoredPoset, v: Element) -> Monomial:
    return hook_monomials(poset)[v]


def _check_order_reversing(poset: Poset, sigma: Dict[Element, int]):
    for lower, upper in poset.covers:
        if sigma[lower] < sigma[upper]:
            raise ValueError(f"sigma({lower}) < sigma({upper}) although {lower} < {upper}")


def _adjacent_numerator(poset: ColoredPoset, sigma: Dict[Element, int], pt: QtPoint) -> Fraction:
    value = Fraction(1)
    for x in poset.elements:
        for y in poset.above(x):
            if not poset.colors_adjacent(poset.color(x), poset.color(y)):
                continue
            gap = poset.ranks[y] - poset.ranks[x]
            if gap % 2 == 0:
                raise ParityViolation(f"Adjacent colors at {x} < {y} with even rank gap {gap}")
            value *= f_eval(sigma[x] - sigma[y], (gap - 1) // 2, pt)
    return value


def _same_color_denominator(poset: ColoredPoset, sigma: Dict[Element, int], pt: QtPoint) -> Fraction:
    value = Fraction(1)
    for x in poset.elements:
        for y in poset.above(x):
            if poset.color(x) != poset.color(y):
                continue
            gap = poset.ranks[y] - poset.ranks[x]
            if gap % 2:
                raise ParityViolation(f"Equal colors at {x} < {y} with odd rank gap {gap}")
            e = gap // 2
            value *= f_eval(sigma[x] - sigma[y], e, pt) * f_eval(sigma[x] - sigma[y], e - 1, pt)
    return value


def weight_W_P(poset: ColoredPoset, sigma: Dict[Element, int], pt: QtPoint) -> Fraction:
    _check_order_reversing(poset, sigma)
    numerator = _adjacent_numerator(poset, sigma, pt)
    top_color = poset.color(poset.v0)
    for x in poset.elements:
        if poset.color(x) == top_color:
            gap = poset.ranks[poset.v0] - poset.ranks[x]
            if gap % 2:
                raise ParityViolation(f"{x} shares the color of v0 at odd rank gap {gap}")
            numerator *= f_eval(sigma[x], gap // 2, pt)
    return numerator / _same_color_denominator(poset, sigma, pt)


def weight_W_P_extended(poset: ColoredPoset, sigma: Dict[Element, int], pt: QtPoint) -> Fraction:
    """W_P through P with a new top: adjacent pairs over the extension, same-color pairs over P."""
    _check_order_reversing(poset, sigma)
    extended = poset.extended()
    sigma_hat = dict(sigma)
    sigma_hat[EXTENDED_TOP] = 0
    return _adjacent_numerator(extended, sigma_hat, pt) / _same_color_denominator(poset, sigma, pt)


def enumerate_p_partitions(poset: ColoredPoset, degree_bound: int) -> Iterator[Dict[Element, int]]:
    """Order-reversing maps to N with total <= D, placed along decreasing rank."""
    order = sorted(poset.elements, key=lambda x: (-poset.ranks[x], element_key(x)))
    above = {x: poset.upper_covers(x) for x in order}
    below_count = {x: len(poset.below(x)) for x in order}
    count = 0
    for sigma in enumerate_order_reversing(order, above, degree_bound, None, below_count):
        count += 1
        yield sigma
    logger.debug(f"Enumerated {count} P-partitions of {len(poset)} elements with total <= {degree_bound}")


def color_monomial(poset: ColoredPoset, sigma: Dict[Element, int]) -> Monomial:
    exponents: Dict[Label, int] = {}
    for x, value in sigma.items():
        if value:
            exponents[poset.color(x)] = exponents.get(poset.color(x), 0) + value
    return Monomial(exponents)


def conjecture_lhs(poset: ColoredPoset, pt: QtPoint, degree_bound: int) -> Tuple[TruncatedSeries, int]:
    coeffs: Dict[Monomial, Fraction] = {}
    count = 0
    for sigma in enumerate_p_partitions(poset, degree_bound):
        count += 1
        monomial = color_monomial(poset, sigma)
        coeffs[monomial] = coeffs.get(monomial, Fraction(0)) + weight_W_P(poset, sigma, pt)
    return TruncatedSeries(coeffs, degree_bound), count


def conjecture_rhs(poset: ColoredPoset, pt: QtPoint, degree_bound: int) -> TruncatedSeries:
    return product_F(hook_monomials(poset).values(), pt, degree_bound)


def conjecture_check(poset: ColoredPoset, pt: QtPoint, degree_bound: int) -> IdentityResult:
    lhs, _ = conjecture_lhs(poset, pt, degree_bound)
    return compare_series("conjecture", lhs, conjecture_rhs(poset, pt, degree_bound))


def rooted_tree_series(poset: ColoredPoset, pt: QtPoint, degree_bound: int) -> TruncatedSeries:
    """F(z[T]) times the weighted sums over the subtrees below the root."""
    if any(len(poset.upper_covers(x)) > 1 for x in poset.elements):
        raise InvalidSpec("Poset is not a rooted tree")
    root = poset.v0
    series = F_series(Monomial.product_of(poset.color(x) for x in poset.elements), pt, degree_bound)
    for child in poset.lower_covers(root):
        branch, _ = conjecture_lhs(poset.subtree(child), pt, degree_bound)
        series = series * branch
    return series
