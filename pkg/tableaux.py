#!/usr/bin/env python3
"""
Tableaux
Shapes D(lambda) and shifted shapes S(mu): cells, hooks, traces, the three
(q,t) weights, profile data and brute-force weighted enumeration of reverse
(shifted) plane partitions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Hashable, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from qt_series import Monomial, QtPoint, TruncatedSeries, f_eval

logger = logging.getLogger(__name__)


class CellOutsideDiagram(ValueError):
    pass


class NTooSmall(ValueError):
    pass


class InfeasibleProfile(ValueError):
    pass


class InvalidPartition(ValueError):
    pass


def parse_parts(text: str) -> Tuple[int, ...]:
    """Parse a comma separated part list such as ``"3,2,1"``; the empty string is the empty partition."""
    text = text.strip()
    if not text or text == "0":
        return ()
    try:
        return tuple(int(piece) for piece in text.split(",") if piece.strip())
    except ValueError as e:
        raise InvalidPartition(f"Cannot read parts from {text!r}: {e}") from e


class _Parts:
    parts: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, index):
        return self.parts[index]

    def part(self, i: int) -> int:
        """1-based part with zero padding."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts) if self.parts else "()"


@dataclass(frozen=True)
class Partition(_Parts):
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 1 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidPartition(f"{parts} is not a partition")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        return cls(parse_parts(text))

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        return Partition(tuple(sum(1 for p in self.parts if p >= j) for j in range(1, self.parts[0] + 1)))


@dataclass(frozen=True)
class StrictPartition(_Parts):
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts) or any(a <= b for a, b in zip(parts, parts[1:])):
            raise InvalidPartition(f"{parts} is not a strict partition")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "StrictPartition":
        return cls(parse_parts(text))


Shape = Union[Partition, StrictPartition]


class Cell(NamedTuple):
    i: int
    j: int


class Sign(Enum):
    PLUS = "+"
    MINUS = "-"


def partitions_of(n: int, max_part: Optional[int] = None, max_length: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    if max_length == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        rest_length = None if max_length is None else max_length - 1
        for rest in partitions_of(n - first, first, rest_length):
            yield (first,) + rest


def partitions_up_to(n: int, max_length: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    for size in range(n + 1):
        yield from partitions_of(size, max_length=max_length)


def strict_partitions_of(n: int, max_part: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in strict_partitions_of(n - first, first - 1):
            yield (first,) + rest


def conjugate_parts(parts: Sequence[int]) -> Tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p >= j) for j in range(1, parts[0] + 1))


def odd_columns(parts: Sequence[int]) -> int:
    return sum(1 for column in conjugate_parts(parts) if column % 2)


# Diagrams and hooks

def diagram_cells(shape: Shape) -> List[Cell]:
    """Cells in row-major order."""
    if isinstance(shape, StrictPartition):
        return [Cell(i, j) for i, part in enumerate(shape.parts, 1) for j in range(i, part + i)]
    return [Cell(i, j) for i, part in enumerate(shape.parts, 1) for j in range(1, part + 1)]


def in_diagram(shape: Shape, i: int, j: int) -> bool:
    if i < 1 or i > shape.length:
        return False
    if isinstance(shape, StrictPartition):
        return i <= j <= shape.part(i) + i - 1
    return 1 <= j <= shape.part(i)


def _require_cell(shape: Shape, cell: Tuple[int, int]) -> Cell:
    cell = Cell(*cell)
    if not in_diagram(shape, cell.i, cell.j):
        raise CellOutsideDiagram(f"Cell {tuple(cell)} is not in the diagram of {shape}")
    return cell


def hook_cells(shape: Partition, cell: Tuple[int, int]) -> set:
    """Arm, leg and the cell itself."""
    i, j = _require_cell(shape, cell)
    hook = {Cell(i, j)}
    hook.update(Cell(i, l) for l in range(j + 1, shape.part(i) + 1))
    hook.update(Cell(k, j) for k in range(i + 1, shape.length + 1) if in_diagram(shape, k, j))
    return hook


def shifted_hook_cells(shape: StrictPartition, cell: Tuple[int, int]) -> set:
    """Arm, leg and the broken arm along row j+1."""
    i, j = _require_cell(shape, cell)
    hook = {Cell(i, j)}
    hook.update(Cell(i, l) for l in range(j + 1, shape.part(i) + i))
    hook.update(Cell(k, j) for k in range(i + 1, shape.length + 1) if in_diagram(shape, k, j))
    hook.update(Cell(j + 1, l) for l in range(j + 1, shape.part(j + 1) + j + 1) if in_diagram(shape, j + 1, l))
    return hook


def content_monomial(cells: Iterable[Tuple[int, int]]) -> Monomial:
    return Monomial.product_of(j - i for i, j in cells)


def hook_monomial(shape: Shape, cell: Tuple[int, int]) -> Monomial:
    if isinstance(shape, StrictPartition):
        return content_monomial(shifted_hook_cells(shape, cell))
    return content_monomial(hook_cells(shape, cell))


def tilde_z(k: int) -> Monomial:
    """z~_k = z_0 z_1 ... z_(k-1), with z~_0 = 1."""
    if k < 0:
        raise ValueError(f"tilde_z needs k >= 0, got {k}")
    return Monomial.product_of(range(k))


def _tilde_x(k: int) -> Monomial:
    if k == 0:
        return Monomial()
    return Monomial({0: Fraction(1, 2), **{c: 1 for c in range(1, k)}})


def _tilde_y(k: int) -> Monomial:
    if k == 0:
        return Monomial()
    return Monomial({0: Fraction(1, 2), **{-c: 1 for c in range(1, k)}})


def complement_and_epsilon(mu: StrictPartition, n: int) -> Tuple[StrictPartition, Tuple[Sign, ...]]:
    """Complement of mu in [N] (decreasing) and the sign word, + exactly at the parts of mu."""
    if n < mu.part(1):
        raise NTooSmall(f"N={n} is smaller than the largest part of {mu}")
    parts = set(mu.parts)
    complement = StrictPartition(tuple(k for k in range(n, 0, -1) if k not in parts))
    signs = tuple(Sign.PLUS if k in parts else Sign.MINUS for k in range(1, n + 1))
    return complement, signs


def frobenius_split(shape: Partition) -> Tuple[int, StrictPartition, StrictPartition]:
    """Cut D(lambda) along its diagonal into the two strict halves mu and nu."""
    conjugate = shape.conjugate()
    r = sum(1 for i, part in enumerate(shape.parts, 1) if part >= i)
    mu = StrictPartition(tuple(shape.part(i) - i + 1 for i in range(1, r + 1)))
    nu = StrictPartition(tuple(conjugate.part(i) - i + 1 for i in range(1, r + 1)))
    return r, mu, nu


def closed_form_hook_monomial(shape: Shape, cell: Tuple[int, int], n: int) -> Monomial:
    """Hook monomial through the complement of the diagonal halves, for a bound N."""
    i, j = _require_cell(shape, cell)
    if isinstance(shape, StrictPartition):
        r = shape.length
        complement, _ = complement_and_epsilon(shape, n)
        if j < r:
            return tilde_z(shape.part(i)) * tilde_z(shape.part(j + 1))
        if j == r:
            return tilde_z(shape.part(i))
        return tilde_z(shape.part(i)) / tilde_z(complement.part(n - j + 1))
    r, mu, nu = frobenius_split(shape)
    if n < max(mu.part(1), nu.part(1)):
        raise NTooSmall(f"N={n} is smaller than the arm or leg of {shape}")
    mu_c, _ = complement_and_epsilon(mu, n)
    nu_c, _ = complement_and_epsilon(nu, n)
    if i <= r and j <= r:
        return _tilde_x(mu.part(i)) * _tilde_y(nu.part(j))
    if i <= r:
        return _tilde_x(mu.part(i)) / _tilde_x(mu_c.part(n - j + 1))
    return _tilde_y(nu.part(j)) / _tilde_y(nu_c.part(n - i + 1))


def shifted_membership(mu: StrictPartition, n: int, i: int, j: int) -> bool:
    """For i <= r < j <= N: (i,j) lies in S(mu) iff mu_i > mu^c_(N-j+1)."""
    complement, _ = complement_and_epsilon(mu, n)
    return mu.part(i) > complement.part(n - j + 1)


# Arrays, traces and profiles

class PPartitionArray:
    """
    Order-reversing filling of a diagram by non-negative integers.

    Out-of-range reads follow one convention: rows or columns <= 0, and
    cells below the diagonal of a shifted shape, hold 0.
    """

    __slots__ = ("shape", "_values")

    def __init__(self, shape: Shape, values: Dict[Tuple[int, int], int]):
        self.shape = shape
        cells = diagram_cells(shape)
        if set(map(tuple, values)) != set(map(tuple, cells)):
            raise CellOutsideDiagram(f"Array cells do not match the diagram of {shape}")
        self._values = {Cell(*c): int(v) for c, v in values.items()}
        for (i, j), value in self._values.items():
            if value < 0:
                raise ValueError(f"Negative entry {value} at {(i, j)}")
            for neighbour in ((i, j + 1), (i + 1, j)):
                if neighbour in self._values and self._values[neighbour] < value:
                    raise ValueError(f"Entries at {(i, j)} and {neighbour} break the order")

    @classmethod
    def from_rows(cls, shape: Shape, rows: Sequence[Sequence[int]]) -> "PPartitionArray":
        values: Dict[Tuple[int, int], int] = {}
        shifted = isinstance(shape, StrictPartition)
        for i, row in enumerate(rows, 1):
            start = i if shifted else 1
            for offset, value in enumerate(row):
                values[(i, start + offset)] = value
        return cls(shape, values)

    @property
    def shifted(self) -> bool:
        return isinstance(self.shape, StrictPartition)

    def get(self, k: int, l: int) -> int:
        if k <= 0 or l <= 0 or (self.shifted and k > l):
            return 0
        return self._values.get(Cell(k, l), 0)

    def __getitem__(self, cell: Tuple[int, int]) -> int:
        return self._values[Cell(*cell)]

    def cells(self) -> List[Cell]:
        return diagram_cells(self.shape)

    @property
    def total(self) -> int:
        return sum(self._values.values())

    def rows(self) -> List[List[int]]:
        grouped: Dict[int, List[int]] = {}
        for cell in self.cells():
            grouped.setdefault(cell.i, []).append(self._values[cell])
        return [grouped[i] for i in sorted(grouped)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PPartitionArray):
            return NotImplemented
        return self.shape == other.shape and self._values == other._values

    def __hash__(self) -> int:
        return hash((self.shape, tuple(sorted(self._values.items()))))

    def __repr__(self) -> str:
        return f"PPartitionArray({self.shape}, {self.rows()})"


@dataclass(frozen=True)
class ProfileData:
    """Profile sigma[0] and the raw traces sigma[k], zeros kept, for 0 <= k <= N."""

    profile: Partition
    traces: Tuple[Tuple[int, ...], ...]

    def trace(self, k: int) -> Tuple[int, ...]:
        return self.traces[k]

    def trace_partition(self, k: int) -> Tuple[int, ...]:
        return tuple(p for p in self.traces[k] if p)


def interlaces(upper: Sequence[int], lower: Sequence[int]) -> bool:
    """upper > lower as a horizontal strip: upper_1 >= lower_1 >= upper_2 >= ..."""
    upper = [p for p in upper if p]
    lower = [p for p in lower if p]
    if len(lower) > len(upper) or len(upper) > len(lower) + 1:
        return False
    for idx, part in enumerate(upper):
        below = lower[idx] if idx < len(lower) else 0
        if part < below:
            return False
        if idx + 1 < len(upper) and below < upper[idx + 1]:
            return False
    return True


def traces_and_profile(sigma: PPartitionArray, n: int) -> ProfileData:
    """Read the k-th diagonal of a shifted array from SE to NW for k = 0..N."""
    if not sigma.shifted:
        raise ValueError("Traces are defined for shifted arrays")
    mu = sigma.shape
    complement_and_epsilon(mu, n)
    traces = []
    for k in range(n + 1):
        diagonal = [sigma[(i, i + k)] for i in range(mu.length, 0, -1) if in_diagram(mu, i, i + k)]
        traces.append(tuple(diagonal))
    profile = Partition(tuple(sorted(traces[0], reverse=True)))
    if tuple(p for p in traces[0] if p) != profile.parts:
        raise ValueError(f"Diagonal {traces[0]} is not weakly decreasing")
    return ProfileData(profile=profile, traces=tuple(traces))


def trace_monomial(sigma: PPartitionArray) -> Monomial:
    exponents: Dict[int, int] = {}
    for cell in sigma.cells():
        value = sigma[cell]
        if value:
            exponents[cell.j - cell.i] = exponents.get(cell.j - cell.i, 0) + value
    return Monomial(exponents)


# Weights

def _cross_ratio(value: int, sigma: PPartitionArray, i: int, j: int, m: int, pt: QtPoint) -> Fraction:
    return (
        f_eval(value - sigma.get(i - m, j - m - 1), m, pt)
        * f_eval(value - sigma.get(i - m - 1, j - m), m, pt)
        / (f_eval(value - sigma.get(i - m, j - m), m, pt)
           * f_eval(value - sigma.get(i - m - 1, j - m - 1), m, pt))
    )


def weight_W_shape(pi: PPartitionArray, pt: QtPoint) -> Fraction:
    if pi.shifted:
        raise ValueError("weight_W_shape needs an unshifted array")
    weight = Fraction(1)
    for i, j in pi.cells():
        value = pi[(i, j)]
        for m in range(min(i, j)):
            weight *= _cross_ratio(value, pi, i, j, m, pt)
    return weight


def _off_diagonal_weight(sigma: PPartitionArray, pt: QtPoint) -> Fraction:
    weight = Fraction(1)
    for i, j in sigma.cells():
        if i == j:
            continue
        value = sigma[(i, j)]
        for m in range(i):
            weight *= _cross_ratio(value, sigma, i, j, m, pt)
    return weight


def weight_W_shifted(sigma: PPartitionArray, pt: QtPoint) -> Fraction:
    if not sigma.shifted:
        raise ValueError("weight_W_shifted needs a shifted array")
    weight = _off_diagonal_weight(sigma, pt)
    for i in range(1, sigma.shape.length + 1):
        value = sigma[(i, i)]
        for m in range((i + 1) // 2):
            weight *= (
                f_eval(value - sigma.get(i - 2 * m - 1, i - 2 * m), 2 * m, pt)
                * f_eval(value - sigma.get(i - 2 * m - 2, i - 2 * m - 1), 2 * m + 1, pt)
                / (f_eval(value - sigma.get(i - 2 * m, i - 2 * m), 2 * m, pt)
                   * f_eval(value - sigma.get(i - 2 * m - 2, i - 2 * m - 2), 2 * m + 1, pt))
            )
    return weight


def weight_V_shifted(sigma: PPartitionArray, pt: QtPoint) -> Fraction:
    if not sigma.shifted:
        raise ValueError("weight_V_shifted needs a shifted array")
    weight = _off_diagonal_weight(sigma, pt)
    for i in range(1, sigma.shape.length + 1):
        value = sigma[(i, i)]
        for m in range(i):
            weight *= (
                f_eval(value - sigma.get(i - m - 1, i - m), m, pt)
                / f_eval(value - sigma.get(i - m, i - m), m, pt)
            )
    return weight


def tau_factors(tau: Union[Partition, Sequence[int]], pt: QtPoint) -> Tuple[Fraction, Fraction, int]:
    """b_tau, its even-offset part b^el_tau, and the number of odd columns o(tau)."""
    parts = tuple(tau.parts if isinstance(tau, Partition) else tau)

    def part(k: int) -> int:
        return parts[k - 1] if k <= len(parts) else 0

    b = Fraction(1)
    b_el = Fraction(1)
    for i in range(1, len(parts) + 1):
        for j in range(i, len(parts) + 1):
            factor = f_eval(part(i) - part(j + 1), j - i, pt) / f_eval(part(i) - part(j), j - i, pt)
            b *= factor
            if (j - i) % 2 == 0:
                b_el *= factor
    return b, b_el, odd_columns(parts)


# Enumeration

def enumerate_order_reversing(
    order: Sequence[Hashable],
    above: Dict[Hashable, Sequence[Hashable]],
    budget: int,
    pinned: Optional[Dict[Hashable, int]] = None,
    below_count: Optional[Dict[Hashable, int]] = None,
) -> Iterator[Dict[Hashable, int]]:
    """
    Depth-first enumeration of order-reversing fillings with total <= budget.

    ``order`` is a linear extension listed from the top down; ``above[x]``
    names the elements covering x, which must already be placed when x is.
    ``below_count[x]`` (optional) counts elements strictly below x and is
    used to prune values that would force the total past the budget.
    """
    pinned = pinned or {}
    below_count = below_count or {}
    suffix_pinned = [0] * (len(order) + 1)
    for idx in range(len(order) - 1, -1, -1):
        suffix_pinned[idx] = suffix_pinned[idx + 1] + pinned.get(order[idx], 0)
    values: Dict[Hashable, int] = {}

    def place(idx: int, partial: int) -> Iterator[Dict[Hashable, int]]:
        if idx == len(order):
            yield dict(values)
            return
        node = order[idx]
        low = max((values[up] for up in above.get(node, ())), default=0)
        room = budget - partial - suffix_pinned[idx + 1]
        if node in pinned:
            candidates = [pinned[node]] if pinned[node] >= low else []
        else:
            candidates = range(low, room + 1)
        spread = 1 + below_count.get(node, 0)
        for value in candidates:
            if value * spread > budget - partial or value > room:
                break
            values[node] = value
            yield from place(idx + 1, partial + value)
        values.pop(node, None)

    yield from place(0, 0)


def diagram_above(shape: Shape) -> Dict[Cell, List[Cell]]:
    """Upper covers of each cell: its left and upper neighbours."""
    above: Dict[Cell, List[Cell]] = {}
    for i, j in diagram_cells(shape):
        above[Cell(i, j)] = [Cell(k, l) for k, l in ((i, j - 1), (i - 1, j)) if in_diagram(shape, k, l)]
    return above


def _diagram_below_count(shape: Shape) -> Dict[Cell, int]:
    cells = diagram_cells(shape)
    return {c: sum(1 for d in cells if d != c and d.i >= c.i and d.j >= c.j) for c in cells}


def enumerate_ppartitions(shape: Shape, degree_bound: int, profile: Optional[Partition] = None) -> Iterator[PPartitionArray]:
    """All reverse (shifted) plane partitions with |sigma| <= D, optionally with a fixed profile."""
    if degree_bound < 0:
        raise ValueError(f"Degree bound must be >= 0, got {degree_bound}")
    pinned: Dict[Cell, int] = {}
    if profile is not None:
        if not isinstance(shape, StrictPartition):
            raise InfeasibleProfile("A profile only constrains shifted shapes")
        profile = profile if isinstance(profile, Partition) else Partition(tuple(profile))
        r = shape.length
        if profile.length > r:
            raise InfeasibleProfile(f"Profile {profile} is longer than {shape}")
        if profile.size > degree_bound:
            raise InfeasibleProfile(f"Profile {profile} exceeds the degree bound {degree_bound}")
        pinned = {Cell(i, i): profile.part(r - i + 1) for i in range(1, r + 1)}
        for i in range(1, r):
            if pinned[Cell(i, i)] > pinned[Cell(i + 1, i + 1)]:
                raise InfeasibleProfile(f"Diagonal {profile} breaks the order of {shape}")
    order = diagram_cells(shape)
    count = 0
    for values in enumerate_order_reversing(order, diagram_above(shape), degree_bound, pinned, _diagram_below_count(shape)):
        count += 1
        yield PPartitionArray(shape, values)
    logger.debug(f"Enumerated {count} arrays on {shape} with total <= {degree_bound}")


class WeightKind(Enum):
    W = "W"
    V = "V"
    UNWEIGHTED = "unweighted"


def array_weight(sigma: PPartitionArray, pt: Optional[QtPoint], kind: WeightKind) -> Fraction:
    if kind is WeightKind.UNWEIGHTED:
        return Fraction(1)
    if pt is None:
        raise ValueError(f"Weight {kind.value} needs a (q,t) point")
    if kind is WeightKind.V:
        return weight_V_shifted(sigma, pt)
    return weight_W_shifted(sigma, pt) if sigma.shifted else weight_W_shape(sigma, pt)


def lhs_series(
    shape: Shape,
    pt: Optional[QtPoint],
    degree_bound: int,
    kind: Union[WeightKind, str] = WeightKind.W,
    profile: Optional[Partition] = None,
) -> TruncatedSeries:
    """Weighted trace generating function of the arrays on a diagram, to degree D."""
    series, _ = lhs_series_counted(shape, pt, degree_bound, kind, profile)
    return series


def lhs_series_counted(
    shape: Shape,
    pt: Optional[QtPoint],
    degree_bound: int,
    kind: Union[WeightKind, str] = WeightKind.W,
    profile: Optional[Partition] = None,
) -> Tuple[TruncatedSeries, int]:
    kind = WeightKind(kind)
    if kind is WeightKind.V and not isinstance(shape, StrictPartition):
        raise ValueError("The V weight is defined for shifted shapes only")
    count = 0
    coeffs: Dict[Monomial, Fraction] = {}
    for sigma in enumerate_ppartitions(shape, degree_bound, profile):
        count += 1
        monomial = trace_monomial(sigma)
        coeffs[monomial] = coeffs.get(monomial, Fraction(0)) + array_weight(sigma, pt, kind)
    return TruncatedSeries(coeffs, degree_bound), count


def glue_halves(pi: PPartitionArray) -> Tuple[PPartitionArray, PPartitionArray, StrictPartition, StrictPartition]:
    """Split a reverse plane partition along the diagonal into shifted halves over S(mu) and S(nu)."""
    if pi.shifted:
        raise ValueError("Only unshifted arrays can be split")
    _, mu, nu = frobenius_split(pi.shape)
    sigma = {cell: pi[cell] for cell in diagram_cells(mu)}
    rho = {Cell(i, j): pi[(j, i)] for i, j in diagram_cells(nu)}
    return PPartitionArray(mu, sigma), PPartitionArray(nu, rho), mu, nu


def glued_monomial(sigma: PPartitionArray, rho: PPartitionArray) -> Monomial:
    """x^tr(sigma) y^tr(rho) with x_0 = y_0 = z_0^(1/2), x_k = z_k, y_k = z_-k."""
    exponents: Dict[int, Fraction] = {}
    for half, sign in ((sigma, 1), (rho, -1)):
        for cell in half.cells():
            content = cell.j - cell.i
            share = Fraction(half[cell], 2) if content == 0 else Fraction(half[cell])
            key = sign * content
            exponents[key] = exponents.get(key, Fraction(0)) + share
    return Monomial(exponents)
