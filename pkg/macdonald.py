#!/usr/bin/env python3
"""
Macdonald Engine
P/Q bases with TruncatedSeries coefficients, the Pieri coefficients
phi+/phi-, the operators G+(u), G-(u), D(y), branching evaluation of P and Q
at monomial arguments, an independent Gram-Schmidt oracle (sympy) and the
identity suite used by the verifier.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import sympy

from qt_series import (
    POINT_CACHE_SIZE,
    Label,
    Monomial,
    QtPoint,
    ScaledMonomial,
    TruncatedSeries,
    F_series,
    f_eval,
    product_F,
    scalar_to_str,
)
from tableaux import (
    PPartitionArray,
    Partition,
    Sign,
    StrictPartition,
    complement_and_epsilon,
    interlaces,
    partitions_of,
    partitions_up_to,
    tau_factors,
    traces_and_profile,
)

logger = logging.getLogger(__name__)

Parts = Tuple[int, ...]
Argument = Union[ScaledMonomial, Monomial, int, Fraction]
Vector = Dict[Parts, Fraction]

IDENTITIES = (
    "cauchy",
    "gn_genfun",
    "schur_littlewood",
    "warnaar",
    "warnaar_plus",
    "warnaar_minus",
    "warnaar_at_one",
    "lemma2_commutation",
    "pieri_oracle",
)


class NotAHorizontalStrip(ValueError):
    pass


class SingularGram(ArithmeticError):
    """A Gram-Schmidt pivot vanished; the (q,t) point is degenerate for the oracle."""


def as_parts(shape: Union[Partition, StrictPartition, Sequence[int]]) -> Parts:
    if isinstance(shape, (Partition, StrictPartition)):
        return shape.parts
    return tuple(p for p in shape if p)


# Horizontal strips and Pieri coefficients

def is_horizontal_strip(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    return interlaces(alpha, beta)


def horizontal_strips_above(beta: Parts, n: int) -> Iterator[Parts]:
    """All alpha > beta with |alpha| = |beta| + n."""
    beta = as_parts(beta)
    length = len(beta)

    def grow(idx: int, remaining: int, acc: Parts) -> Iterator[Parts]:
        if idx == length:
            cap = beta[-1] if length else remaining
            if remaining <= cap:
                yield acc + (remaining,) if remaining else acc
            return
        low = beta[idx]
        high = beta[idx - 1] if idx else low + remaining
        for value in range(low, min(high, low + remaining) + 1):
            yield from grow(idx + 1, remaining - (value - low), acc + (value,))

    yield from grow(0, n, ())


def horizontal_strips_below(alpha: Parts) -> Iterator[Parts]:
    """All beta < alpha, alpha itself included."""
    alpha = as_parts(alpha)
    ranges = [range(alpha[i + 1] if i + 1 < len(alpha) else 0, alpha[i] + 1) for i in range(len(alpha))]
    for choice in itertools.product(*ranges):
        yield tuple(p for p in choice if p)


def _part_getter(parts: Parts):
    def part(k: int) -> int:
        return parts[k - 1] if k <= len(parts) else 0
    return part


def _pieri_product(alpha: Parts, beta: Parts, pt: QtPoint, skew: bool) -> Fraction:
    if not is_horizontal_strip(alpha, beta):
        raise NotAHorizontalStrip(f"{alpha}/{beta} is not a horizontal strip")
    a = _part_getter(alpha)
    b = _part_getter(beta)
    value = Fraction(1)
    for i in range(1, len(alpha) + 1):
        for j in range(i, len(alpha) + 1):
            m = j - i
            numerator = f_eval(a(i) - b(j), m, pt) * f_eval(b(i) - a(j + 1), m, pt)
            if skew:
                denominator = f_eval(a(i) - a(j + 1), m, pt) * f_eval(b(i) - b(j), m, pt)
            else:
                denominator = f_eval(a(i) - a(j), m, pt) * f_eval(b(i) - b(j + 1), m, pt)
            value *= numerator / denominator
    return value


@lru_cache(maxsize=POINT_CACHE_SIZE)
def phi_plus(alpha: Parts, beta: Parts, pt: QtPoint) -> Fraction:
    """Coefficient of P_alpha in g_n P_beta, n = |alpha| - |beta|."""
    return _pieri_product(as_parts(alpha), as_parts(beta), pt, skew=False)


@lru_cache(maxsize=POINT_CACHE_SIZE)
def phi_minus(beta: Parts, alpha: Parts, pt: QtPoint) -> Fraction:
    """Coefficient of P_beta when P_alpha is skewed by g_n."""
    return _pieri_product(as_parts(alpha), as_parts(beta), pt, skew=True)


def clear_point_caches():
    """Drop cached f and Pieri values; entries are keyed on a single (q,t) point."""
    f_eval.cache_clear()
    phi_plus.cache_clear()
    phi_minus.cache_clear()


# Symmetric functions in the P basis

class SymFunc:
    """
    Finite combination sum_lambda c_lambda P_lambda(x;q,t) with series coefficients.

    Zero coefficients are never stored; when ``size_bound`` is set no lambda
    with |lambda| above it is kept either.
    """

    def __init__(
        self,
        terms: Dict[Parts, TruncatedSeries],
        pt: QtPoint,
        degree_bound: int,
        size_bound: Optional[int] = None,
    ):
        self.pt = pt
        self.degree_bound = degree_bound
        self.size_bound = size_bound
        self.terms: Dict[Parts, TruncatedSeries] = {}
        for parts, coeff in terms.items():
            if coeff.degree_bound != degree_bound:
                raise ValueError(f"Coefficient of P{parts} is truncated at {coeff.degree_bound}, not {degree_bound}")
            if coeff.is_zero() or (size_bound is not None and sum(parts) > size_bound):
                continue
            self.terms[as_parts(parts)] = coeff

    @classmethod
    def one(cls, pt: QtPoint, degree_bound: int, size_bound: Optional[int] = None) -> "SymFunc":
        return cls({(): TruncatedSeries.one(degree_bound)}, pt, degree_bound, size_bound)

    @classmethod
    def basis(cls, shape: Union[Partition, Parts], pt: QtPoint, degree_bound: int) -> "SymFunc":
        return cls({as_parts(shape): TruncatedSeries.one(degree_bound)}, pt, degree_bound)

    def _spawn(self, terms: Dict[Parts, TruncatedSeries]) -> "SymFunc":
        return SymFunc(terms, self.pt, self.degree_bound, self.size_bound)

    def coefficient(self, shape: Union[Partition, Parts]) -> TruncatedSeries:
        return self.terms.get(as_parts(shape), TruncatedSeries.zero(self.degree_bound))

    def items(self) -> List[Tuple[Parts, TruncatedSeries]]:
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]))

    def times_series(self, series: TruncatedSeries) -> "SymFunc":
        return self._spawn({parts: coeff * series for parts, coeff in self.terms.items()})

    def __add__(self, other: "SymFunc") -> "SymFunc":
        merged = dict(self.terms)
        for parts, coeff in other.terms.items():
            merged[parts] = merged[parts] + coeff if parts in merged else coeff
        return self._spawn(merged)

    def first_mismatch(self, other: "SymFunc") -> Optional[Tuple[Parts, Monomial, Fraction, Fraction]]:
        for parts in sorted(set(self.terms) | set(other.terms), key=lambda p: (sum(p), p)):
            found = self.coefficient(parts).first_mismatch(other.coefficient(parts))
            if found:
                return (parts,) + found
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymFunc):
            return NotImplemented
        return self.first_mismatch(other) is None

    __hash__ = None

    def to_json(self) -> Dict[str, object]:
        return {",".join(map(str, parts)) or "0": coeff.to_json() for parts, coeff in self.items()}

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"SymFunc({len(self.terms)} terms, D={self.degree_bound})"


def _accumulate(target: Dict[Parts, TruncatedSeries], parts: Parts, series: TruncatedSeries):
    if series.is_zero():
        return
    target[parts] = target[parts] + series if parts in target else series


def apply_Gplus(h: SymFunc, u: Argument, max_size: Optional[int] = None) -> SymFunc:
    """
    G+(u) P_beta = sum_{alpha > beta} phi+ u^(|alpha|-|beta|) P_alpha.

    A constant u makes the sum infinite. ``max_size`` then caps |alpha| plus
    the lowest coefficient degree, which is all that survives a following
    degree operator.
    """
    u = ScaledMonomial.of(u)
    if not u.monomial.is_genuine():
        raise ValueError(f"G+ needs non-negative integral exponents, got {u.monomial!r}")
    step = int(u.degree)
    if step == 0 and max_size is None:
        raise ValueError("G+ with a constant argument needs max_size")
    result: Dict[Parts, TruncatedSeries] = {}
    for beta, coeff in h.terms.items():
        low = coeff.min_degree
        n = 0
        while (low + n * step <= h.degree_bound) if step else (sum(beta) + n + low <= max_size):
            term = coeff.mul_term(u.power(n))
            for alpha in horizontal_strips_above(beta, n):
                _accumulate(result, alpha, term.scale(phi_plus(alpha, beta, h.pt)))
            n += 1
    return h._spawn(result)


def apply_Gminus(h: SymFunc, u: Argument) -> SymFunc:
    """G-(u) P_alpha = sum_{beta < alpha} phi- u^(|alpha|-|beta|) P_beta."""
    u = ScaledMonomial.of(u)
    result: Dict[Parts, TruncatedSeries] = {}
    for alpha, coeff in h.terms.items():
        size = sum(alpha)
        for beta in horizontal_strips_below(alpha):
            term = coeff.mul_term(u.power(size - sum(beta)))
            _accumulate(result, beta, term.scale(phi_minus(beta, alpha, h.pt)))
    return h._spawn(result)


def apply_Ddeg(h: SymFunc, y: Argument) -> SymFunc:
    """D(y) P_lambda = y^|lambda| P_lambda."""
    y = ScaledMonomial.of(y)
    return h._spawn({parts: coeff.mul_term(y.power(sum(parts))) for parts, coeff in h.terms.items()})


def operator_word_eval(
    mu: StrictPartition,
    n: int,
    pt: QtPoint,
    degree_bound: int,
    max_size: Optional[int] = None,
) -> SymFunc:
    """
    D(z_0) G^e1(1) D(z_1) G^e2(1) ... D(z_{N-1}) G^eN(1) applied to 1.

    The coefficient of P_tau is the V-weighted trace generating function of
    the arrays on S(mu) with profile tau.
    """
    _, signs = complement_and_epsilon(mu, n)
    bound = degree_bound if max_size is None else max_size
    h = SymFunc.one(pt, degree_bound, size_bound=bound)
    for k in range(n, 0, -1):
        if signs[k - 1] is Sign.PLUS:
            h = apply_Gplus(h, 1, max_size=bound)
        else:
            h = apply_Gminus(h, 1)
        h = apply_Ddeg(h, Monomial.var(k - 1))
    logger.debug(f"Operator word for {mu} with N={n} kept {len(h)} terms")
    return h


def weight_V_via_pieri(sigma: PPartitionArray, n: int, pt: QtPoint) -> Fraction:
    """The V weight as the product of Pieri coefficients along consecutive traces."""
    data = traces_and_profile(sigma, n)
    _, signs = complement_and_epsilon(sigma.shape, n)
    weight = Fraction(1)
    for k, sign in enumerate(signs, 1):
        before, after = data.trace_partition(k - 1), data.trace_partition(k)
        if sign is Sign.PLUS:
            weight *= phi_plus(before, after, pt)
        else:
            weight *= phi_minus(before, after, pt)
    return weight


# Evaluation at monomials

def eval_P_at_monomials(tau: Union[Partition, Parts], args: Sequence[Argument], pt: QtPoint, degree_bound: int) -> TruncatedSeries:
    """P_tau(x_1, ..., x_n) by branching on the last variable with phi-."""
    args = [ScaledMonomial.of(a) for a in args]
    for arg in args:
        if not arg.monomial.is_genuine():
            raise ValueError(f"Evaluation arguments need non-negative integral exponents, got {arg.monomial!r}")
    lowest = [min((int(a.degree) for a in args[:k]), default=0) for k in range(len(args) + 1)]
    zero = TruncatedSeries.zero(degree_bound)
    cache: Dict[Tuple[Parts, int], TruncatedSeries] = {}

    def evaluate(parts: Parts, count: int) -> TruncatedSeries:
        if not parts:
            return TruncatedSeries.one(degree_bound)
        if len(parts) > count or sum(parts) * lowest[count] > degree_bound:
            return zero
        key = (parts, count)
        if key not in cache:
            last = args[count - 1]
            size = sum(parts)
            total = zero
            for beta in horizontal_strips_below(parts):
                if len(beta) > count - 1:
                    continue
                inner = evaluate(beta, count - 1)
                if inner.is_zero():
                    continue
                total = total + inner.mul_term(last.power(size - sum(beta))).scale(phi_minus(beta, parts, pt))
            cache[key] = total
        return cache[key]

    return evaluate(as_parts(tau), len(args))


def eval_Q_at_monomials(tau: Union[Partition, Parts], args: Sequence[Argument], pt: QtPoint, degree_bound: int) -> TruncatedSeries:
    b, _, _ = tau_factors(as_parts(tau), pt)
    return eval_P_at_monomials(tau, args, pt, degree_bound).scale(b)


# Gram-Schmidt oracle

def _to_fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _assignments(rho: Parts, targets: Parts) -> int:
    """Ways to place the parts of rho into bins of sizes targets; the m_targets coefficient of p_rho."""

    @lru_cache(maxsize=None)
    def count(idx: int, remaining: Parts) -> int:
        if idx == len(rho):
            return 1 if not any(remaining) else 0
        total = 0
        for k, capacity in enumerate(remaining):
            if capacity >= rho[idx]:
                total += count(idx + 1, remaining[:k] + (capacity - rho[idx],) + remaining[k + 1:])
        return total

    return count(0, tuple(targets))


class SymmetricFunctionOracle:
    """
    Macdonald P built from the (q,t) inner product alone.

    Works degree by degree in the monomial and power-sum bases; nothing here
    touches the Pieri coefficients.
    """

    def __init__(self, pt: QtPoint):
        self.pt = pt
        self._q = sympy.Rational(pt.q.numerator, pt.q.denominator)
        self._t = sympy.Rational(pt.t.numerator, pt.t.denominator)
        self._transition: Dict[int, sympy.Matrix] = {}
        self._inverse: Dict[int, sympy.Matrix] = {}
        self._gram: Dict[int, sympy.Matrix] = {}
        self._p_vectors: Dict[int, List[sympy.Matrix]] = {}

    @staticmethod
    def basis(n: int) -> List[Parts]:
        return sorted(partitions_of(n))

    def p_to_m(self, n: int) -> sympy.Matrix:
        """Row rho holds the m-expansion of p_rho."""
        if n not in self._transition:
            basis = self.basis(n)
            self._transition[n] = sympy.Matrix([[_assignments(rho, mu) for mu in basis] for rho in basis])
        return self._transition[n]

    def m_to_p(self, n: int) -> sympy.Matrix:
        if n not in self._inverse:
            self._inverse[n] = self.p_to_m(n).inv()
        return self._inverse[n]

    def z_qt(self, rho: Parts) -> Fraction:
        value = Fraction(1)
        for part, multiplicity in Counter(rho).items():
            value *= part ** multiplicity * int(sympy.factorial(multiplicity))
        for part in rho:
            value *= (1 - self.pt.q ** part) / (1 - self.pt.t ** part)
        return value

    def gram_m(self, n: int) -> sympy.Matrix:
        if n not in self._gram:
            basis = self.basis(n)
            inverse = self.m_to_p(n)
            weights = sympy.diag(*[_to_sympy(self.z_qt(rho)) for rho in basis])
            self._gram[n] = inverse * weights * inverse.T
        return self._gram[n]

    def _orthogonal_basis(self, n: int) -> List[sympy.Matrix]:
        if n not in self._p_vectors:
            gram = self.gram_m(n)
            size = len(self.basis(n))
            vectors: List[sympy.Matrix] = []
            for idx in range(size):
                vector = sympy.zeros(size, 1)
                vector[idx] = 1
                for previous in vectors:
                    norm = (previous.T * gram * previous)[0, 0]
                    if norm == 0:
                        raise SingularGram(f"Zero pivot in degree {n} at {self.pt}")
                    vector = vector - ((vector.T * gram * previous)[0, 0] / norm) * previous
                vectors.append(vector)
            self._p_vectors[n] = vectors
            logger.debug(f"Orthogonalised {size} monomial functions of degree {n}")
        return self._p_vectors[n]

    def monomial_expansion(self, shape: Union[Partition, Parts]) -> Vector:
        """P_lambda in the monomial basis, zero coefficients dropped."""
        parts = as_parts(shape)
        n = sum(parts)
        basis = self.basis(n)
        vector = self._orthogonal_basis(n)[basis.index(parts)]
        return {mu: _to_fraction(vector[i]) for i, mu in enumerate(basis) if vector[i] != 0}

    def power_sum_expansion(self, shape: Union[Partition, Parts]) -> Vector:
        return self.from_monomial(self.monomial_expansion(shape))

    def from_monomial(self, mvec: Vector) -> Vector:
        result: Dict[Parts, Fraction] = {}
        for n in {sum(mu) for mu in mvec}:
            basis = self.basis(n)
            inverse = self.m_to_p(n)
            for mu, coeff in mvec.items():
                if sum(mu) != n:
                    continue
                row = basis.index(mu)
                for col, rho in enumerate(basis):
                    if inverse[row, col] != 0:
                        result[rho] = result.get(rho, Fraction(0)) + coeff * _to_fraction(inverse[row, col])
        return {rho: c for rho, c in result.items() if c}

    def to_monomial(self, pvec: Vector) -> Vector:
        result: Dict[Parts, Fraction] = {}
        for rho, coeff in pvec.items():
            n = sum(rho)
            basis = self.basis(n)
            matrix = self.p_to_m(n)
            row = basis.index(rho)
            for col, mu in enumerate(basis):
                if matrix[row, col]:
                    result[mu] = result.get(mu, Fraction(0)) + coeff * int(matrix[row, col])
        return {mu: c for mu, c in result.items() if c}

    @staticmethod
    def multiply(a: Vector, b: Vector) -> Vector:
        result: Dict[Parts, Fraction] = {}
        for rho, ca in a.items():
            for sigma, cb in b.items():
                key = tuple(sorted(rho + sigma, reverse=True))
                result[key] = result.get(key, Fraction(0)) + ca * cb
        return {rho: c for rho, c in result.items() if c}

    def inner(self, a: Vector, b: Vector) -> Fraction:
        return sum((ca * b[rho] * self.z_qt(rho) for rho, ca in a.items() if rho in b), Fraction(0))


def gram_schmidt_P(shape: Union[Partition, Parts], pt: QtPoint) -> Vector:
    return SymmetricFunctionOracle(pt).monomial_expansion(shape)


# Identity suite

@dataclass
class IdentityResult:
    name: str
    passed: bool
    mismatch: Optional[Tuple[str, Fraction, Fraction]] = None
    terms_compared: int = 0

    def to_dict(self) -> Dict[str, object]:
        data: Dict[str, object] = {"name": self.name, "passed": self.passed, "terms_compared": self.terms_compared}
        if self.mismatch:
            where, lhs, rhs = self.mismatch
            data["mismatch"] = {"where": where, "lhs": scalar_to_str(lhs), "rhs": scalar_to_str(rhs)}
        return data


def compare_series(name: str, lhs: TruncatedSeries, rhs: TruncatedSeries, context: str = "") -> IdentityResult:
    compared = len({m for m, _ in lhs.items()} | {m for m, _ in rhs.items()})
    found = lhs.first_mismatch(rhs)
    if found is None:
        return IdentityResult(name, True, None, compared)
    monomial, left, right = found
    where = f"{context} {monomial.describe()}".strip()
    logger.info(f"{name}: mismatch at {where}: {left} != {right}")
    return IdentityResult(name, False, (where, left, right), compared)


def _variables(labels: Sequence[Label]) -> List[Monomial]:
    return [Monomial.var(label) for label in labels]


def _scaled(a: Union[Label, Fraction], x: Monomial) -> ScaledMonomial:
    if isinstance(a, str):
        return ScaledMonomial(Fraction(1), Monomial.var(a) * x)
    return ScaledMonomial(Fraction(a), x)


def _a_power(series: TruncatedSeries, a: Union[Label, Fraction], exponent: int) -> TruncatedSeries:
    if isinstance(a, str):
        return series.mul_term(Monomial.var(a, exponent)) if exponent else series
    return series.scale(Fraction(a) ** exponent)


def _pairs(xs: Sequence[Monomial]) -> List[Monomial]:
    return [xs[i] * xs[j] for i in range(len(xs)) for j in range(i + 1, len(xs))]


def cauchy_sides(x: Sequence[Label], u: Sequence[Label], pt: QtPoint, degree_bound: int) -> Tuple[TruncatedSeries, TruncatedSeries]:
    """sum_tau Q_tau(u) P_tau(x) against prod_{i,k} F(x_i u_k)."""
    xs, us = _variables(x), _variables(u)
    lhs = TruncatedSeries.zero(degree_bound)
    for tau in partitions_up_to(degree_bound // 2, max_length=min(len(xs), len(us))):
        lhs = lhs + eval_Q_at_monomials(tau, us, pt, degree_bound) * eval_P_at_monomials(tau, xs, pt, degree_bound)
    rhs = product_F([xi * uk for xi in xs for uk in us], pt, degree_bound)
    return lhs, rhs


def gn_genfun_sides(x: Sequence[Label], u: Label, pt: QtPoint, degree_bound: int) -> Tuple[TruncatedSeries, TruncatedSeries]:
    """sum_n g_n(x) u^n against prod_i F(x_i u)."""
    xs = _variables(x)
    lhs = TruncatedSeries.zero(degree_bound)
    for n in range(degree_bound // 2 + 1):
        g_n = eval_Q_at_monomials((n,) if n else (), xs, pt, degree_bound)
        lhs = lhs + (g_n.mul_term(Monomial.var(u, n)) if n else g_n)
    rhs = product_F([xi * Monomial.var(u) for xi in xs], pt, degree_bound)
    return lhs, rhs


def warnaar_sides(
    x: Sequence[Label],
    a: Union[Label, Fraction, int],
    pt: QtPoint,
    degree_bound: int,
    variant: str = "warnaar",
) -> Tuple[TruncatedSeries, TruncatedSeries]:
    """
    sum_tau a^e(tau) (b^el/b) Q_tau(x) against its product form.

    variant "warnaar": e = o(tau), RHS prod F(a x_i) prod F(x_i x_j)
    variant "plus":    e = (|tau| + o(tau))/2, RHS prod F(a x_i) prod F(a x_i x_j)
    variant "minus":   e = (|tau| - o(tau))/2, RHS prod F(x_i) prod F(a x_i x_j)
    """
    if not isinstance(a, str):
        a = Fraction(a)
    xs = _variables(x)
    lhs = TruncatedSeries.zero(degree_bound)
    for tau in partitions_up_to(degree_bound, max_length=len(xs)):
        b, b_el, odd = tau_factors(tau, pt)
        size = sum(tau)
        exponent = {"warnaar": odd, "plus": (size + odd) // 2, "minus": (size - odd) // 2}[variant]
        # b^el/b * Q_tau = b^el * P_tau
        term = eval_P_at_monomials(tau, xs, pt, degree_bound).scale(b_el)
        lhs = lhs + _a_power(term, a, exponent)
    singles = [_scaled(a, xi) for xi in xs] if variant != "minus" else xs
    doubles = [_scaled(a, pair) for pair in _pairs(xs)] if variant != "warnaar" else _pairs(xs)
    rhs = product_F(list(singles) + list(doubles), pt, degree_bound)
    return lhs, rhs


def schur_littlewood_sides(x: Sequence[Label], pt: QtPoint, degree_bound: int) -> Tuple[TruncatedSeries, TruncatedSeries]:
    """sum_tau (b^el/b) Q_tau(x) against prod F(x_i) prod F(x_i x_j)."""
    xs = _variables(x)
    lhs = TruncatedSeries.zero(degree_bound)
    for tau in partitions_up_to(degree_bound, max_length=len(xs)):
        _, b_el, _ = tau_factors(tau, pt)
        lhs = lhs + eval_P_at_monomials(tau, xs, pt, degree_bound).scale(b_el)
    rhs = product_F(list(xs) + _pairs(xs), pt, degree_bound)
    return lhs, rhs


def _lemma2_relations(beta: Parts, pt: QtPoint, degree_bound: int) -> Iterator[Tuple[str, SymFunc, SymFunc]]:
    u, v, z, w = (Monomial.var(label) for label in ("u", "v", "z", "w"))
    h = SymFunc.basis(beta, pt, degree_bound)
    yield (
        "G-(u)G+(v) = F(uv)G+(v)G-(u)",
        apply_Gminus(apply_Gplus(h, v), u),
        apply_Gplus(apply_Gminus(h, u), v).times_series(F_series(u * v, pt, degree_bound)),
    )
    yield "D(z)G+(u) = G+(zu)D(z)", apply_Ddeg(apply_Gplus(h, u), z), apply_Gplus(apply_Ddeg(h, z), z * u)
    yield (
        "D(z)G-(u) = G-(u/z)D(z)",
        apply_Ddeg(apply_Gminus(h, u), z),
        apply_Gminus(apply_Ddeg(h, z), Monomial({"z": -1, "u": 1})),
    )
    yield "D(z)D(w) = D(zw)", apply_Ddeg(apply_Ddeg(h, w), z), apply_Ddeg(h, z * w)


def lemma2_check(pt: QtPoint, degree_bound: int, beta_max: int = 3) -> IdentityResult:
    compared = 0
    one = SymFunc.one(pt, degree_bound)
    units = (
        ("D(z)1 = 1", apply_Ddeg(one, Monomial.var("z")), one),
        ("G-(u)1 = 1", apply_Gminus(one, Monomial.var("u")), one),
    )
    checks = itertools.chain(
        units,
        *(_lemma2_relations(beta, pt, degree_bound) for beta in partitions_up_to(beta_max)),
    )
    for relation, lhs, rhs in checks:
        compared += sum(len(c) for _, c in lhs.items())
        found = lhs.first_mismatch(rhs)
        if found:
            parts, monomial, left, right = found
            where = f"{relation} at P{parts} {monomial.describe()}"
            logger.info(f"lemma2_commutation: mismatch {where}: {left} != {right}")
            return IdentityResult("lemma2_commutation", False, (where, left, right), compared)
    return IdentityResult("lemma2_commutation", True, None, compared)


def pieri_oracle_check(pt: QtPoint, beta_max: int = 4, strip_max: int = 3) -> IdentityResult:
    """
    phi+ and phi- against the Gram-Schmidt oracle.

    For every |beta| <= beta_max and 1 <= n <= strip_max, g_n P_beta is
    expanded with phi+ and compared with the oracle's product in the monomial
    basis; each phi-(beta, alpha) is compared with
    <P_alpha, g_n P_beta> / <P_beta, P_beta>.
    """
    oracle = SymmetricFunctionOracle(pt)
    compared = 0

    def failed(where: str, left: Fraction, right: Fraction) -> IdentityResult:
        logger.info(f"pieri_oracle: mismatch at {where}: {left} != {right}")
        return IdentityResult("pieri_oracle", False, (where, left, right), compared)

    for n in range(1, strip_max + 1):
        b_n, _, _ = tau_factors((n,), pt)
        g_n = {rho: c * b_n for rho, c in oracle.power_sum_expansion((n,)).items()}
        for beta in partitions_up_to(beta_max):
            p_beta = oracle.power_sum_expansion(beta) if beta else {(): Fraction(1)}
            product = oracle.multiply(g_n, p_beta)
            expected: Vector = {}
            for alpha in horizontal_strips_above(beta, n):
                coeff = phi_plus(alpha, beta, pt)
                for mu, value in oracle.monomial_expansion(alpha).items():
                    expected[mu] = expected.get(mu, Fraction(0)) + coeff * value
                compared += 1
                skewed = phi_minus(beta, alpha, pt) * oracle.inner(p_beta, p_beta)
                paired = oracle.inner(oracle.power_sum_expansion(alpha), product)
                if skewed != paired:
                    return failed(f"phi-({beta}, {alpha})", skewed, paired)
            actual = oracle.to_monomial(product)
            for mu in sorted(set(expected) | set(actual)):
                compared += 1
                left, right = expected.get(mu, Fraction(0)), actual.get(mu, Fraction(0))
                if left != right:
                    return failed(f"g_{n} P{beta} at m{mu}", left, right)
    return IdentityResult("pieri_oracle", True, None, compared)


DEFAULT_PARAMS: Dict[str, Dict[str, object]] = {
    "cauchy": {"x": ["x1", "x2", "x3"], "u": ["u1", "u2"]},
    "gn_genfun": {"x": ["x1", "x2", "x3"], "u": "u"},
    "schur_littlewood": {"x": ["x1", "x2", "x3"]},
    "warnaar": {"x": ["x1", "x2", "x3"], "a": "a"},
    "warnaar_plus": {"x": ["x1", "x2", "x3"], "a": "a"},
    "warnaar_minus": {"x": ["x1", "x2", "x3"], "a": "a"},
    "warnaar_at_one": {"x": ["x1", "x2", "x3"]},
    "lemma2_commutation": {"beta_max": 3},
    "pieri_oracle": {"beta_max": 4, "strip_max": 3},
}


def identity_check(which: str, pt: QtPoint, degree_bound: int, params: Optional[Dict[str, object]] = None) -> IdentityResult:
    """Build both sides of one identity independently and compare them exactly to degree D."""
    if which not in IDENTITIES:
        raise ValueError(f"Unknown identity {which!r}; expected one of {', '.join(IDENTITIES)}")
    options = dict(DEFAULT_PARAMS[which])
    options.update(params or {})
    logger.debug(f"Checking {which} at {pt} to degree {degree_bound}")
    if which == "lemma2_commutation":
        return lemma2_check(pt, degree_bound, int(options["beta_max"]))
    if which == "pieri_oracle":
        return pieri_oracle_check(pt, int(options["beta_max"]), int(options["strip_max"]))
    if which == "cauchy":
        lhs, rhs = cauchy_sides(options["x"], options["u"], pt, degree_bound)
    elif which == "gn_genfun":
        lhs, rhs = gn_genfun_sides(options["x"], options["u"], pt, degree_bound)
    elif which == "schur_littlewood":
        lhs, rhs = schur_littlewood_sides(options["x"], pt, degree_bound)
    elif which == "warnaar_at_one":
        lhs, _ = warnaar_sides(options["x"], 1, pt, degree_bound)
        rhs, _ = schur_littlewood_sides(options["x"], pt, degree_bound)
    else:
        variant = {"warnaar": "warnaar", "warnaar_plus": "plus", "warnaar_minus": "minus"}[which]
        lhs, rhs = warnaar_sides(options["x"], options["a"], pt, degree_bound, variant)
    return compare_series(which, lhs, rhs)
