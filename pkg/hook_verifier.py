#!/usr/bin/env python3
"""
Hook Verifier
Runs one verification job: samples (q,t) points, builds both sides of the
chosen hook-product identity independently and compares them exactly up to
the degree bound. Mathematical failures come back as fail reports carrying
the first mismatching coefficient.
"""

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from dcomplete_poset import (
    ColoredPoset,
    build_poset,
    build_shape_poset,
    build_shifted_poset,
    cell_id,
    color_monomial,
    conjecture_lhs,
    conjecture_rhs,
    enumerate_p_partitions,
    hook_monomials,
    random_rooted_tree,
    rooted_tree_series,
    weight_W_P,
)
from macdonald import (
    IDENTITIES,
    SingularGram,
    clear_point_caches,
    compare_series,
    eval_Q_at_monomials,
    identity_check,
    operator_word_eval,
)
from qt_series import (
    PRIME_ZERO,
    DegenerateDenominator,
    Monomial,
    QtPoint,
    TruncatedSeries,
    product_F,
    product_geometric,
    sample_qt_point,
    scalar_to_str,
)
from tableaux import (
    Partition,
    StrictPartition,
    closed_form_hook_monomial,
    complement_and_epsilon,
    diagram_cells,
    enumerate_ppartitions,
    frobenius_split,
    hook_monomial,
    lhs_series_counted,
    partitions_up_to,
    tilde_z,
    weight_W_shape,
    weight_W_shifted,
)
from verify_config import VerifierConfig

logger = logging.getLogger(__name__)

TARGETS = ("gansner", "main_a", "main_b", "refined", "lemma1", "identities", "conjecture", "cross_checks")

# targets that never look at q and t
POINT_FREE = ("gansner",)

POSET_SOURCES = ("shape", "shifted", "tree", "dk1", "random_tree", "poset")

RhsHook = Callable[[str, TruncatedSeries], TruncatedSeries]


class JobError(ValueError):
    pass


@dataclass
class VerificationJob:
    target: str
    shape: Optional[Partition] = None
    shifted: Optional[StrictPartition] = None
    two_color: bool = False
    tree: Optional[str] = None
    dk1: Optional[int] = None
    random_tree: Optional[Tuple[int, int]] = None
    poset: Optional[ColoredPoset] = None
    profile: Optional[Partition] = None
    n: Optional[int] = None
    deg: int = 6
    trials: int = 3
    seed: int = 0
    qt: Optional[QtPoint] = None

    def __post_init__(self):
        if self.target not in TARGETS:
            raise JobError(f"Unknown target {self.target!r}; expected one of {', '.join(TARGETS)}")
        if self.deg < 0:
            raise JobError(f"Degree bound must be >= 0, got {self.deg}")
        if self.trials < 1:
            raise JobError(f"Need at least one trial, got {self.trials}")
        given = [name for name in POSET_SOURCES if getattr(self, name) is not None]
        if len(given) > 1:
            raise JobError(f"Give one poset source, got {', '.join(given)}")
        needs = {
            "main_a": ("shape",),
            "main_b": ("shifted",),
            "refined": ("shifted",),
            "lemma1": ("shifted",),
            "cross_checks": ("shape", "shifted"),
            "gansner": POSET_SOURCES,
            "conjecture": POSET_SOURCES,
        }.get(self.target)
        if needs and not (given and given[0] in needs):
            flags = " / ".join(f"--{name.replace('_', '-')}" for name in needs)
            raise JobError(f"Target {self.target} needs one of {flags}")
        if self.random_tree is not None and self.random_tree[0] < 1:
            raise JobError(f"A random tree needs at least one node, got {self.random_tree[0]}")
        if self.profile is not None and self.target != "refined":
            raise JobError("A profile only applies to the refined target")
        if self.n is not None and self.target not in ("refined", "lemma1", "cross_checks"):
            raise JobError(f"N does not apply to the {self.target} target")

    def build_colored_poset(self) -> ColoredPoset:
        if self.poset is not None:
            return self.poset
        if self.shape is not None:
            return build_shape_poset(self.shape)
        if self.shifted is not None:
            return build_shifted_poset(self.shifted, self.two_color)
        if self.tree is not None:
            return build_poset("tree", self.tree)
        if self.random_tree is not None:
            return random_rooted_tree(*self.random_tree)
        return build_poset("dk1", self.dk1)

    def to_dict(self) -> Dict[str, object]:
        data: Dict[str, object] = {"target": self.target, "deg": self.deg, "trials": self.trials, "seed": self.seed}
        if self.shape is not None:
            data["shape"] = str(self.shape)
        if self.shifted is not None:
            data["shifted"] = str(self.shifted)
            data["two_color"] = self.two_color
        if self.tree is not None:
            data["tree"] = self.tree
        if self.dk1 is not None:
            data["dk1"] = self.dk1
        if self.random_tree is not None:
            data["random_tree"] = {"size": self.random_tree[0], "seed": self.random_tree[1]}
        if self.poset is not None:
            data["poset_elements"] = len(self.poset)
        if self.profile is not None:
            data["profile"] = str(self.profile)
        if self.n is not None:
            data["N"] = self.n
        if self.qt is not None:
            data["qt"] = self.qt.to_dict()
        return data


@dataclass
class Mismatch:
    where: str
    lhs: Optional[Fraction]
    rhs: Optional[Fraction]
    check: str = ""

    def to_dict(self) -> Dict[str, object]:
        return {
            "check": self.check,
            "where": self.where,
            "lhs": None if self.lhs is None else scalar_to_str(self.lhs),
            "rhs": None if self.rhs is None else scalar_to_str(self.rhs),
        }


@dataclass
class TrialResult:
    point: Optional[QtPoint]
    passed: bool
    mismatch: Optional[Mismatch] = None
    counts: Dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        data: Dict[str, object] = {
            "point": self.point.to_dict() if self.point else None,
            "passed": self.passed,
            "counts": dict(self.counts),
        }
        if self.mismatch:
            data["mismatch"] = self.mismatch.to_dict()
        return data


@dataclass
class Report:
    job: VerificationJob
    trials: List[TrialResult]
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(trial.passed for trial in self.trials)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    @property
    def first_mismatch(self) -> Optional[Mismatch]:
        for trial in self.trials:
            if not trial.passed:
                return trial.mismatch
        return None

    def counts(self) -> Dict[str, int]:
        totals: Dict[str, int] = {}
        for trial in self.trials:
            for key, value in trial.counts.items():
                totals[key] = totals.get(key, 0) + value
        return totals

    def to_dict(self, include_elapsed: bool = False) -> Dict[str, object]:
        data: Dict[str, object] = {
            "status": self.status,
            "job": self.job.to_dict(),
            "trials": [trial.to_dict() for trial in self.trials],
            "counts": self.counts(),
        }
        if not self.passed and self.first_mismatch:
            data["first_mismatch"] = self.first_mismatch.to_dict()
        if include_elapsed:
            data["elapsed"] = round(self.elapsed, 3)
        return data


class _Failed(Exception):
    """Internal: carries the first mismatch out of a check."""

    def __init__(self, mismatch: Mismatch):
        super().__init__(mismatch.where)
        self.mismatch = mismatch


def refined_pairs(mu: StrictPartition, n: int) -> List[Tuple[int, int]]:
    """Pairs (mu^c_k, mu_l) with mu^c_k < mu_l, complement taken in [N]."""
    complement, _ = complement_and_epsilon(mu, n)
    return [(c, m) for c in complement.parts for m in mu.parts if c < m]


def refined_rhs(mu: StrictPartition, n: int, tau: Partition, pt: QtPoint, degree_bound: int) -> TruncatedSeries:
    """prod F(z~_(mu^c_k)^-1 z~_(mu_l)) times Q_tau(z~_(mu_1), ..., z~_(mu_r))."""
    arguments = []
    for c, m in refined_pairs(mu, n):
        argument = tilde_z(m) / tilde_z(c)
        if not argument.is_genuine():
            raise ArithmeticError(f"Factor argument {argument!r} has a negative exponent")
        arguments.append(argument)
    series = product_F(arguments, pt, degree_bound)
    return series * eval_Q_at_monomials(tau, [tilde_z(m) for m in mu.parts], pt, degree_bound)


def _default_n(shape) -> int:
    if isinstance(shape, StrictPartition):
        return shape.part(1)
    _, mu, nu = frobenius_split(shape)
    return max(mu.part(1), nu.part(1))


class HookVerifier:
    """Drives the verification targets; ``rhs_hook`` lets callers tamper with right-hand sides."""

    def __init__(self, config: Optional[VerifierConfig] = None, rhs_hook: Optional[RhsHook] = None):
        self.config = config or VerifierConfig()
        self.rhs_hook = rhs_hook

    def run(self, job: VerificationJob) -> Report:
        logger.info(f"Verifying {job.target} to degree {job.deg} with {job.trials} trial(s), seed {job.seed}")
        start = time.perf_counter()
        check = getattr(self, f"_check_{job.target}")
        trials: List[TrialResult] = []
        if job.target in POINT_FREE:
            trials.append(self._trial(check, job, None))
        elif job.qt is not None:
            trials.append(self._trial(check, job, job.qt))
        else:
            next_seed = job.seed
            for _ in range(job.trials):
                trial, next_seed = self._sampled_trial(check, job, next_seed)
                trials.append(trial)
        report = Report(job, trials, time.perf_counter() - start)
        if report.passed:
            logger.info(f"{job.target} passed in {report.elapsed:.2f}s")
        else:
            logger.error(f"{job.target} failed at {report.first_mismatch.where} after {report.elapsed:.2f}s")
        return report

    def _sampled_trial(self, check, job: VerificationJob, next_seed: int) -> Tuple[TrialResult, int]:
        for _ in range(self.config.max_resample + 1):
            pt = sample_qt_point(next_seed)
            next_seed += 1
            try:
                return self._run_check(check, job, pt), next_seed
            except (DegenerateDenominator, SingularGram) as e:
                logger.warning(f"Degenerate point {pt}: {e}; resampling")
        where = f"no usable point after {self.config.max_resample} resamples"
        return TrialResult(None, False, Mismatch(where, None, None, "sampling")), next_seed

    def _trial(self, check, job: VerificationJob, pt: Optional[QtPoint]) -> TrialResult:
        try:
            return self._run_check(check, job, pt)
        except (DegenerateDenominator, SingularGram) as e:
            logger.error(f"Degenerate point {pt}: {e}")
            return TrialResult(pt, False, Mismatch(f"degenerate point: {e}", None, None, "sampling"))

    def _run_check(self, check, job: VerificationJob, pt: Optional[QtPoint]) -> TrialResult:
        if pt is not None:
            logger.info(f"Trial at {pt}")
        counts: Dict[str, int] = {}
        try:
            check(job, pt, counts)
        except _Failed as failure:
            return TrialResult(pt, False, failure.mismatch, counts)
        finally:
            clear_point_caches()
        return TrialResult(pt, True, None, counts)

    # Comparison helpers

    def _rhs(self, name: str, series: TruncatedSeries) -> TruncatedSeries:
        return self.rhs_hook(name, series) if self.rhs_hook else series

    def _compare(self, name: str, lhs: TruncatedSeries, rhs: TruncatedSeries, counts: Dict[str, int], context: str = ""):
        result = compare_series(name, lhs, self._rhs(name, rhs), context)
        counts["terms_compared"] = counts.get("terms_compared", 0) + result.terms_compared
        if not result.passed:
            where, left, right = result.mismatch
            raise _Failed(Mismatch(where, left, right, name))

    @staticmethod
    def _expect(name: str, where: str, lhs, rhs, counts: Dict[str, int]):
        counts["values_compared"] = counts.get("values_compared", 0) + 1
        if lhs != rhs:
            lhs_value = lhs if isinstance(lhs, Fraction) else None
            rhs_value = rhs if isinstance(rhs, Fraction) else None
            raise _Failed(Mismatch(f"{where}: {lhs} != {rhs}", lhs_value, rhs_value, name))

    # Targets

    def _check_gansner(self, job: VerificationJob, pt: Optional[QtPoint], counts: Dict[str, int]):
        diagram = job.shape if job.shape is not None else job.shifted
        if diagram is not None:
            lhs, arrays = lhs_series_counted(diagram, None, job.deg, "unweighted")
            hooks = [hook_monomial(diagram, cell) for cell in diagram_cells(diagram)]
        else:
            poset = job.build_colored_poset()
            coeffs: Dict[Monomial, int] = {}
            arrays = 0
            for sigma in enumerate_p_partitions(poset, job.deg):
                arrays += 1
                monomial = color_monomial(poset, sigma)
                coeffs[monomial] = coeffs.get(monomial, 0) + 1
            lhs = TruncatedSeries(coeffs, job.deg)
            hooks = list(hook_monomials(poset).values())
        counts["arrays"] = arrays
        self._compare("gansner", lhs, product_geometric(hooks, job.deg), counts)

    def _check_main_a(self, job: VerificationJob, pt: QtPoint, counts: Dict[str, int]):
        lhs, counts["arrays"] = lhs_series_counted(job.shape, pt, job.deg, "W")
        rhs = product_F([hook_monomial(job.shape, cell) for cell in diagram_cells(job.shape)], pt, job.deg)
        self._compare("main_a", lhs, rhs, counts)

    def _check_main_b(self, job: VerificationJob, pt: QtPoint, counts: Dict[str, int]):
        lhs, counts["arrays"] = lhs_series_counted(job.shifted, pt, job.deg, "W")
        rhs = product_F([hook_monomial(job.shifted, cell) for cell in diagram_cells(job.shifted)], pt, job.deg)
        self._compare("main_b", lhs, rhs, counts)

    def _check_refined(self, job: VerificationJob, pt: QtPoint, counts: Dict[str, int]):
        mu = job.shifted
        n = job.n if job.n is not None else mu.part(1)
        if job.profile is not None:
            profiles = [job.profile]
        else:
            profiles = [Partition(tau) for tau in partitions_up_to(job.deg // 2, max_length=mu.length)]
        counts["arrays"] = 0
        for tau in profiles:
            lhs, arrays = lhs_series_counted(mu, pt, job.deg, "V", tau)
            counts["arrays"] += arrays
            rhs = refined_rhs(mu, n, tau, pt, job.deg)
            self._compare("refined", lhs, rhs, counts, f"tau={tau}")

    def _check_lemma1(self, job: VerificationJob, pt: QtPoint, counts: Dict[str, int]):
        mu = job.shifted
        n = job.n if job.n is not None else mu.part(1)
        word = operator_word_eval(mu, n, pt, job.deg)
        profiles = list(partitions_up_to(job.deg, max_length=mu.length))
        stray = sorted(set(word.terms) - set(profiles))
        if stray:
            raise _Failed(Mismatch(f"operator word has a P{stray[0]} term outside the profiles", None, None, "lemma1"))
        counts["arrays"] = 0
        for tau in profiles:
            lhs, arrays = lhs_series_counted(mu, pt, job.deg, "V", Partition(tau))
            counts["arrays"] += arrays
            self._compare("lemma1", lhs, word.coefficient(tau), counts, f"P{tau}")

    def _check_identities(self, job: VerificationJob, pt: QtPoint, counts: Dict[str, int]):
        for which in IDENTITIES:
            result = identity_check(which, pt, job.deg)
            counts["terms_compared"] = counts.get("terms_compared", 0) + result.terms_compared
            if not result.passed:
                where, left, right = result.mismatch
                raise _Failed(Mismatch(where, left, right, which))

    def _check_conjecture(self, job: VerificationJob, pt: QtPoint, counts: Dict[str, int]):
        poset = job.build_colored_poset()
        lhs, counts["arrays"] = conjecture_lhs(poset, pt, job.deg)
        self._compare("conjecture", lhs, conjecture_rhs(poset, pt, job.deg), counts)
        if len(poset.top_tree) == len(poset):
            self._compare("tree_recursion", lhs, rooted_tree_series(poset, pt, job.deg), counts)
        if job.shifted is not None and job.two_color:
            reduced, _ = lhs_series_counted(job.shifted, pt, job.deg, "W")
            self._compare("shifted_reduction", lhs.substitute(PRIME_ZERO, 0), reduced, counts)

    def _check_cross_checks(self, job: VerificationJob, pt: QtPoint, counts: Dict[str, int]):
        diagram = job.shape if job.shape is not None else job.shifted
        shifted = isinstance(diagram, StrictPartition)
        poset = build_shifted_poset(diagram, two_color=True) if shifted else build_shape_poset(diagram)
        n = job.n if job.n is not None else _default_n(diagram)
        hooks = hook_monomials(poset)
        for i, j in diagram_cells(diagram):
            expected = hook_monomial(diagram, (i, j))
            inductive = hooks[cell_id(i, j)].rename(PRIME_ZERO, 0) if shifted else hooks[cell_id(i, j)]
            self._expect("hook_dc", f"cell ({i},{j})", inductive.describe(), expected.describe(), counts)
            closed = closed_form_hook_monomial(diagram, (i, j), n)
            self._expect("hook_closed_form", f"cell ({i},{j})", closed.describe(), expected.describe(), counts)
        reference = weight_W_shifted if shifted else weight_W_shape
        arrays = 0
        for sigma in enumerate_ppartitions(diagram, job.deg):
            arrays += 1
            values = {cell_id(i, j): sigma[(i, j)] for i, j in sigma.cells()}
            self._expect("weight_W_P", f"array {sigma.rows()}", weight_W_P(poset, values, pt), reference(sigma, pt), counts)
        counts["arrays"] = arrays
