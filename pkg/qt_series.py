#!/usr/bin/env python3
"""
(q,t) Series Core
Exact scalars at a rational (q,t) specialization, sparse monomials over
colour labels, and power series truncated by total degree.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

logger = logging.getLogger(__name__)

PRIME_ZERO = "0'"

# f(n;m) values kept across one trial; callers clear between points
POINT_CACHE_SIZE = 1 << 14

Label = Union[int, str]
Scalar = Fraction
ExponentLike = Union[int, Fraction]
Mismatch = Tuple["Monomial", Fraction, Fraction]


class DegenerateDenominator(ArithmeticError):
    """A factor 1 - q^(i+1) t^m vanished at the chosen point."""


class InvalidMonomial(ValueError):
    pass


class TruncationMismatch(ValueError):
    pass


class NegativeExponent(ValueError):
    pass


class InvalidQtPoint(ValueError):
    pass


def _looks_integral(text: str) -> bool:
    return text.lstrip("-").isdigit()


def _label_text(label: Label) -> str:
    if isinstance(label, str) and _looks_integral(label):
        return f'"{label}"'
    return str(label)


def label_key(label: Label) -> Tuple[int, int, str]:
    """Total order on labels: integers by value, then 0', then other ids as strings."""
    if isinstance(label, int) and not isinstance(label, bool):
        return (0, label, "")
    if label == PRIME_ZERO:
        return (1, 0, "")
    return (2, 0, str(label))


def scalar_to_str(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def scalar_from_str(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Not an exact rational: {text!r} ({e})") from e


@dataclass(frozen=True)
class QtPoint:
    """An exact rational specialization of q and t."""

    q: Fraction
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        object.__setattr__(self, "t", Fraction(self.t))
        for name, value in (("q", self.q), ("t", self.t)):
            if value in (0, 1, -1):
                raise InvalidQtPoint(f"{name} must avoid 0, 1 and -1, got {value}")

    @classmethod
    def parse(cls, text: str) -> "QtPoint":
        """Parse a ``p/q,r/s`` pair."""
        pieces = [piece for piece in text.split(",") if piece.strip()]
        if len(pieces) != 2:
            raise InvalidQtPoint(f"Expected 'q,t' as two rationals, got {text!r}")
        try:
            return cls(scalar_from_str(pieces[0]), scalar_from_str(pieces[1]))
        except ValueError as e:
            raise InvalidQtPoint(str(e)) from e

    def to_dict(self) -> Dict[str, str]:
        return {"q": scalar_to_str(self.q), "t": scalar_to_str(self.t)}

    def __str__(self) -> str:
        return f"q={self.q}, t={self.t}"


def sample_qt_point(seed: int) -> QtPoint:
    """Draw a generic point with small numerators and denominators, deterministic per seed."""
    rng = random.Random(seed)
    while True:
        values = []
        for _ in range(2):
            numerator = rng.randint(-20, 20)
            denominator = rng.randint(1, 20)
            values.append(Fraction(numerator, denominator))
        q, t = values
        if any(v in (0, 1, -1) or abs(v) >= 1 for v in values) or q == t:
            continue
        return QtPoint(q, t)


class Monomial:
    """
    Sparse monomial over colour labels.

    Exponents are integers or half-integers; no zero exponent is stored.
    Only genuine monomials (integral, non-negative) may enter a series.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, exponents: Optional[Dict[Label, ExponentLike]] = None):
        items = []
        for label, exponent in (exponents or {}).items():
            value = Fraction(exponent)
            if value.denominator not in (1, 2):
                raise InvalidMonomial(f"Exponent {value} of {label!r} is not a half-integer")
            if value:
                items.append((label, value))
        items.sort(key=lambda item: label_key(item[0]))
        self._items: Tuple[Tuple[Label, Fraction], ...] = tuple(items)
        self._hash = hash(self._items)

    @classmethod
    def one(cls) -> "Monomial":
        return _ONE

    @classmethod
    def var(cls, label: Label, exponent: ExponentLike = 1) -> "Monomial":
        return cls({label: exponent})

    @classmethod
    def product_of(cls, labels: Iterable[Label]) -> "Monomial":
        exponents: Dict[Label, int] = {}
        for label in labels:
            exponents[label] = exponents.get(label, 0) + 1
        return cls(exponents)

    @property
    def exponents(self) -> Dict[Label, Fraction]:
        return dict(self._items)

    def exponent(self, label: Label) -> Fraction:
        for key, value in self._items:
            if key == label:
                return value
        return Fraction(0)

    @property
    def labels(self) -> List[Label]:
        return [label for label, _ in self._items]

    @property
    def degree(self) -> Fraction:
        return sum((value for _, value in self._items), Fraction(0))

    def is_one(self) -> bool:
        return not self._items

    def is_genuine(self) -> bool:
        return all(value.denominator == 1 and value > 0 for _, value in self._items)

    def _combine(self, other: "Monomial", sign: int) -> "Monomial":
        merged = dict(self._items)
        for label, value in other._items:
            merged[label] = merged.get(label, Fraction(0)) + sign * value
        return Monomial(merged)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        if not other._items:
            return self
        if not self._items:
            return other
        return self._combine(other, 1)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        return self._combine(other, -1)

    def __pow__(self, power: ExponentLike) -> "Monomial":
        power = Fraction(power)
        return Monomial({label: value * power for label, value in self._items})

    def rename(self, source: Label, target: Label) -> "Monomial":
        if all(label != source for label, _ in self._items):
            return self
        merged: Dict[Label, Fraction] = {}
        for label, value in self._items:
            key = target if label == source else label
            merged[key] = merged.get(key, Fraction(0)) + value
        return Monomial(merged)

    def sort_key(self) -> Tuple:
        return (self.degree, tuple((label_key(label), value) for label, value in self._items))

    def to_factors(self) -> List[str]:
        """``label^exp`` strings; string labels that read as integers are double-quoted."""
        return [f"{_label_text(label)}^{value}" for label, value in self._items]

    def describe(self) -> str:
        return "*".join(self.to_factors()) or "1"

    @classmethod
    def from_factors(cls, factors: Iterable[str]) -> "Monomial":
        exponents: Dict[Label, Fraction] = {}
        for factor in factors:
            label_text, sep, exponent_text = factor.rpartition("^")
            if not sep:
                raise InvalidMonomial(f"Factor {factor!r} is not of the form label^exp")
            label: Label = label_text
            if len(label_text) > 1 and label_text[0] == label_text[-1] == '"':
                label = label_text[1:-1]
            elif _looks_integral(label_text):
                label = int(label_text)
            exponents[label] = exponents.get(label, Fraction(0)) + Fraction(exponent_text)
        return cls(exponents)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if not self._items:
            return "1"
        return "*".join(
            f"z[{label}]" if value == 1 else f"z[{label}]^{value}" for label, value in self._items
        )


_ONE = Monomial()


@dataclass(frozen=True)
class ScaledMonomial:
    """A rational multiple of a monomial, used as an operator or substitution argument."""

    coeff: Fraction = Fraction(1)
    monomial: Monomial = _ONE

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))

    @classmethod
    def of(cls, value: Union["ScaledMonomial", Monomial, int, Fraction]) -> "ScaledMonomial":
        if isinstance(value, ScaledMonomial):
            return value
        if isinstance(value, Monomial):
            return cls(Fraction(1), value)
        return cls(Fraction(value), _ONE)

    @property
    def degree(self) -> Fraction:
        return self.monomial.degree

    def power(self, n: int) -> "ScaledMonomial":
        return ScaledMonomial(self.coeff ** n, self.monomial ** n)

    def __mul__(self, other: "ScaledMonomial") -> "ScaledMonomial":
        other = ScaledMonomial.of(other)
        return ScaledMonomial(self.coeff * other.coeff, self.monomial * other.monomial)

    def inverse(self) -> "ScaledMonomial":
        return ScaledMonomial(1 / self.coeff, self.monomial ** -1)


class TruncatedSeries:
    """
    Power series in colour-labelled variables, truncated at total degree D.

    Every stored monomial is genuine with degree <= D and carries a non-zero
    exact coefficient.
    """

    __slots__ = ("_coeffs", "degree_bound")

    def __init__(self, coeffs: Optional[Dict[Monomial, ExponentLike]] = None, degree_bound: int = 0):
        if degree_bound < 0:
            raise ValueError(f"Truncation degree must be >= 0, got {degree_bound}")
        self.degree_bound = degree_bound
        clean: Dict[Monomial, Fraction] = {}
        for monomial, coeff in (coeffs or {}).items():
            if not monomial.is_genuine():
                raise NegativeExponent(f"Monomial {monomial!r} is not admissible in a series")
            value = Fraction(coeff)
            if value and monomial.degree <= degree_bound:
                clean[monomial] = clean.get(monomial, Fraction(0)) + value
        self._coeffs = {m: c for m, c in clean.items() if c}

    @classmethod
    def _raw(cls, coeffs: Dict[Monomial, Fraction], degree_bound: int) -> "TruncatedSeries":
        series = cls.__new__(cls)
        series.degree_bound = degree_bound
        series._coeffs = coeffs
        return series

    @classmethod
    def zero(cls, degree_bound: int) -> "TruncatedSeries":
        return cls._raw({}, degree_bound)

    @classmethod
    def one(cls, degree_bound: int) -> "TruncatedSeries":
        return cls._raw({_ONE: Fraction(1)}, degree_bound)

    @classmethod
    def constant(cls, value: ExponentLike, degree_bound: int) -> "TruncatedSeries":
        return cls({_ONE: value}, degree_bound)

    @classmethod
    def from_monomial(cls, monomial: Monomial, degree_bound: int, coeff: ExponentLike = 1) -> "TruncatedSeries":
        return cls({monomial: coeff}, degree_bound)

    def _check_bound(self, other: "TruncatedSeries"):
        if self.degree_bound != other.degree_bound:
            raise TruncationMismatch(
                f"Series truncated at {self.degree_bound} and {other.degree_bound} cannot be combined"
            )

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._coeffs.get(monomial, Fraction(0))

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._coeffs.items())

    def sorted_items(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self._coeffs.items(), key=lambda item: item[0].sort_key())

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def min_degree(self) -> int:
        if not self._coeffs:
            return self.degree_bound + 1
        return min(int(m.degree) for m in self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_bound(other)
        merged = dict(self._coeffs)
        for monomial, coeff in other._coeffs.items():
            value = merged.get(monomial, Fraction(0)) + coeff
            if value:
                merged[monomial] = value
            else:
                merged.pop(monomial, None)
        return TruncatedSeries._raw(merged, self.degree_bound)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries._raw({m: -c for m, c in self._coeffs.items()}, self.degree_bound)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: ExponentLike) -> "TruncatedSeries":
        factor = Fraction(factor)
        if not factor:
            return TruncatedSeries.zero(self.degree_bound)
        return TruncatedSeries._raw({m: c * factor for m, c in self._coeffs.items()}, self.degree_bound)

    def __mul__(self, other: Union["TruncatedSeries", int, Fraction]) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_bound(other)
        bound = self.degree_bound
        left = [(m, int(m.degree), c) for m, c in self._coeffs.items()]
        right = [(m, int(m.degree), c) for m, c in other._coeffs.items()]
        product: Dict[Monomial, Fraction] = {}
        for lm, ld, lc in left:
            for rm, rd, rc in right:
                if ld + rd > bound:
                    continue
                key = lm * rm
                product[key] = product.get(key, Fraction(0)) + lc * rc
        return TruncatedSeries._raw({m: c for m, c in product.items() if c}, bound)

    def __rmul__(self, other: Union[int, Fraction]) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def mul_term(self, term: Union[ScaledMonomial, Monomial]) -> "TruncatedSeries":
        """
        Multiply by a scaled monomial.

        The argument may carry negative exponents as long as every product
        monomial comes out genuine; otherwise NegativeExponent is raised.
        """
        term = ScaledMonomial.of(term)
        if not term.coeff:
            return TruncatedSeries.zero(self.degree_bound)
        result: Dict[Monomial, Fraction] = {}
        for monomial, coeff in self._coeffs.items():
            product = monomial * term.monomial
            if not product.is_genuine():
                raise NegativeExponent(f"{monomial!r} times {term.monomial!r} leaves a negative exponent")
            if product.degree <= self.degree_bound:
                result[product] = coeff * term.coeff
        return TruncatedSeries._raw(result, self.degree_bound)

    def truncate(self, degree_bound: int) -> "TruncatedSeries":
        if degree_bound > self.degree_bound:
            raise TruncationMismatch(f"Cannot raise truncation from {self.degree_bound} to {degree_bound}")
        return TruncatedSeries._raw(
            {m: c for m, c in self._coeffs.items() if m.degree <= degree_bound}, degree_bound
        )

    def substitute(self, source: Label, target: Label) -> "TruncatedSeries":
        renamed: Dict[Monomial, Fraction] = {}
        for monomial, coeff in self._coeffs.items():
            key = monomial.rename(source, target)
            renamed[key] = renamed.get(key, Fraction(0)) + coeff
        return TruncatedSeries._raw({m: c for m, c in renamed.items() if c}, self.degree_bound)

    def first_mismatch(self, other: "TruncatedSeries") -> Optional[Mismatch]:
        """Smallest monomial (canonical order) where the two series differ, with both coefficients."""
        self._check_bound(other)
        keys = set(self._coeffs) | set(other._coeffs)
        for monomial in sorted(keys, key=Monomial.sort_key):
            lhs, rhs = self.coefficient(monomial), other.coefficient(monomial)
            if lhs != rhs:
                return monomial, lhs, rhs
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_bound(other)
        return self._coeffs == other._coeffs

    __hash__ = None

    def to_json(self) -> List[Dict[str, object]]:
        return [
            {"monomial": monomial.to_factors(), "coefficient": scalar_to_str(coeff)}
            for monomial, coeff in self.sorted_items()
        ]

    @classmethod
    def from_json(cls, data: List[Dict[str, object]], degree_bound: int) -> "TruncatedSeries":
        coeffs: Dict[Monomial, Fraction] = {}
        for entry in data:
            monomial = Monomial.from_factors(entry["monomial"])
            coeffs[monomial] = coeffs.get(monomial, Fraction(0)) + scalar_from_str(str(entry["coefficient"]))
        return cls(coeffs, degree_bound)

    def __repr__(self) -> str:
        if not self._coeffs:
            return f"0 + O({self.degree_bound + 1})"
        terms = [f"{c}*{m!r}" if not m.is_one() else str(c) for m, c in self.sorted_items()]
        return " + ".join(terms) + f" + O({self.degree_bound + 1})"


def equal(a: TruncatedSeries, b: TruncatedSeries) -> bool:
    return a == b


def substitute(series: TruncatedSeries, source: Label, target: Label) -> TruncatedSeries:
    """Rename ``source`` to ``target`` everywhere, summing coefficients of colliding monomials."""
    return series.substitute(source, target)


@lru_cache(maxsize=POINT_CACHE_SIZE)
def f_eval(n: int, m: int, pt: QtPoint) -> Fraction:
    """f(n;m) = prod_{i<n} (1 - q^i t^(m+1)) / (1 - q^(i+1) t^m)."""
    if n < 0 or m < 0:
        raise ValueError(f"f(n;m) needs n, m >= 0, got n={n}, m={m}")
    if n == 0:
        return Fraction(1)
    previous = f_eval(n - 1, m, pt)
    i = n - 1
    denominator = 1 - pt.q ** (i + 1) * pt.t ** m
    if denominator == 0:
        raise DegenerateDenominator(f"1 - q^{i + 1} t^{m} vanishes at {pt}")
    return previous * (1 - pt.q ** i * pt.t ** (m + 1)) / denominator


def _check_argument(x: ScaledMonomial):
    if not x.monomial.is_genuine() or x.degree < 1:
        raise InvalidMonomial(f"Series argument {x.monomial!r} needs integral exponents and degree >= 1")


def F_series(x: Union[Monomial, ScaledMonomial], pt: QtPoint, degree_bound: int) -> TruncatedSeries:
    """F(x) = sum_n f(n;0) x^n, truncated at the given degree."""
    x = ScaledMonomial.of(x)
    _check_argument(x)
    step = int(x.degree)
    coeffs: Dict[Monomial, Fraction] = {}
    for n in range(degree_bound // step + 1):
        term = x.power(n)
        value = f_eval(n, 0, pt) * term.coeff
        if value:
            coeffs[term.monomial] = value
    return TruncatedSeries._raw(coeffs, degree_bound)


def geometric_series(x: Union[Monomial, ScaledMonomial], degree_bound: int) -> TruncatedSeries:
    """1 / (1 - x), truncated at the given degree."""
    x = ScaledMonomial.of(x)
    _check_argument(x)
    step = int(x.degree)
    coeffs: Dict[Monomial, Fraction] = {}
    for n in range(degree_bound // step + 1):
        term = x.power(n)
        if term.coeff:
            coeffs[term.monomial] = term.coeff
    return TruncatedSeries._raw(coeffs, degree_bound)


def product_F(monomials: Iterable[Union[Monomial, ScaledMonomial]], pt: QtPoint, degree_bound: int) -> TruncatedSeries:
    result = TruncatedSeries.one(degree_bound)
    for x in monomials:
        result = result * F_series(x, pt, degree_bound)
    return result


def product_geometric(monomials: Iterable[Union[Monomial, ScaledMonomial]], degree_bound: int) -> TruncatedSeries:
    result = TruncatedSeries.one(degree_bound)
    for x in monomials:
        result = result * geometric_series(x, degree_bound)
    return result


def perturb_coefficient(series: TruncatedSeries, monomial: Monomial, delta: ExponentLike = 1) -> TruncatedSeries:
    """Return a copy with one coefficient shifted by ``delta`` (fault injection)."""
    return series + TruncatedSeries.from_monomial(monomial, series.degree_bound, delta)
