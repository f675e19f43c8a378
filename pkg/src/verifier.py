"""
Verification module for GaloisCensus.

This module runs every invariant suite as a named check: congruence root counts,
divisor sums, oracle equivalence, closed-form agreement, multiplicativity, the
reference tables, the generic-curve formulas, the coefficient identity, census
consistency and, optionally, the finite-field witness.
"""

import logging
import math
import random
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from rich.console import Console
from sympy import primerange

from src.config import (
    DEFAULT_CONSTRUCTIVE_BOUND,
    DEFAULT_ORACLE_BOUND,
    DEFAULT_SEED,
    REFERENCE_FILE,
    SUPPORTED_ELLS,
    VERIFY_CENSUS_MAX_N,
    VERIFY_CONGRUENCE_LIMIT,
    VERIFY_INTRO_MAX_N,
    VERIFY_MULTIPLICATIVE_LIMIT,
    VERIFY_MULTIPLICATIVE_PAIRS,
    VERIFY_PAIRS_MAX_N,
    VERIFY_PSI_IDENTITY_LIMIT,
    VERIFY_SIGMA_LIMIT,
    VERIFY_WITNESS_SAMPLES,
    WITNESS_CONFIGURATIONS,
)
from src.ecmodel import (
    apply_aut,
    divisor_sum_check,
    group_equality_check,
    random_witness_configurations,
    search_curve,
    stable_point_subgroups,
)
from src.errors import GaloisCensusError
from src.locus import (
    component_census,
    component_pairs,
    deg_epsilon,
    disjoint_count,
    disjoint_group_inventory,
    generic_census_formula,
    groups_per_translation_subgroup,
)
from src.modarith import CongruenceKind, count_congruence_roots, sigma
from src.reference_tables import ReferenceTables
from src.stable_count import JClass, enumerate_stable_subgroups, psi
from src.torsion import aut_action, closure_oracle_enumerate, is_stable
from src.utils.progress_tracker import ProgressTracker

# Set up logging
logger = logging.getLogger("galoiscensus")

# Leading coefficient of deg(epsilon) as a multiple of m^2
DEGREE_COEFFICIENTS = {2: 1, 3: 3, 4: 8, 6: 36}

# Disjoint groups per translation subgroup as a multiple of n (halved for ell = 2)
GROUPS_PER_H = {
    2: lambda n: n // 2,
    3: lambda n: n,
    4: lambda n: 2 * n,
    6: lambda n: 6 * n,
}


def curve_class_for(ell: int) -> JClass:
    """A j-class admitting an automorphism of order ell."""
    if ell == 2:
        return JClass.GENERIC
    return JClass.J1728 if ell == 4 else JClass.J0


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named check."""

    name: str
    passed: bool
    cases: int
    detail: str = ""


@dataclass
class VerificationReport:
    """Aggregated check results in the order they ran."""

    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def first_failure(self) -> Optional[CheckResult]:
        for result in self.results:
            if not result.passed:
                return result
        return None

    @property
    def total_cases(self) -> int:
        return sum(r.cases for r in self.results)


class _Mismatch(Exception):
    """Raised inside a check to stop at the first failing case."""


class Verifier:
    """
    Verification sweep

    Runs each check, turns library errors into failed checks, and collects the
    results into a VerificationReport.
    """

    def __init__(
        self,
        max_m: int = DEFAULT_ORACLE_BOUND,
        constructive_max: int = DEFAULT_CONSTRUCTIVE_BOUND,
        with_curves: bool = False,
        reference_path: str = REFERENCE_FILE,
        seed: int = DEFAULT_SEED,
        show_progress: bool = True,
        console: Optional[Console] = None,
    ):
        """
        Constructor

        Args:
            max_m: Largest modulus for the oracle comparison
            constructive_max: Largest modulus for the constructive comparison
            with_curves: Also run the finite-field witness checks
            reference_path: Reference tables file
            seed: Seed for the random multiplicativity pairs and witness samples
            show_progress: Draw a progress bar on stderr
            console: Console for the progress bar
        """
        self.max_m = max_m
        self.constructive_max = constructive_max
        self.with_curves = with_curves
        self.reference_path = reference_path
        self.seed = seed
        self.show_progress = show_progress
        self.console = console

    def checks(self) -> List[Tuple[str, Callable[[], int]]]:
        """The (name, check) pairs this sweep runs, in order."""
        checks = [
            ("congruence roots", self.check_congruence_roots),
            ("divisor sum", self.check_sigma),
            ("oracle equivalence", self.check_oracle_equivalence),
            ("constructive count", self.check_constructive_count),
            ("psi identities", self.check_psi_identities),
            ("multiplicativity", self.check_multiplicativity),
            ("reference tables", self.check_reference_tables),
            ("generic formulas", self.check_generic_formulas),
            ("coefficient identity", self.check_coefficient_identity),
            ("census consistency", self.check_census_consistency),
        ]
        if self.with_curves:
            checks.append(("finite-field witness", self.check_witness))
        return checks

    def run(self) -> VerificationReport:
        """
        Run every check

        Returns:
            VerificationReport: One CheckResult per check
        """
        report = VerificationReport()
        checks = self.checks()
        tracker = ProgressTracker(
            len(checks),
            "Verifying",
            console=self.console,
            enabled=self.show_progress,
        )
        try:
            for name, check in checks:
                result = self._run_check(name, check)
                report.results.append(result)
                if result.passed:
                    logger.debug(f"{name}: passed ({result.cases} cases)")
                else:
                    logger.error(f"{name}: {result.detail}")
                tracker.update()
        finally:
            tracker.close()

        logger.info(
            f"Verification finished: {sum(r.passed for r in report.results)}/"
            f"{len(report.results)} checks passed, {report.total_cases} cases"
        )
        return report

    @staticmethod
    def _run_check(name: str, check: Callable[[], int]) -> CheckResult:
        try:
            cases = check()
        except _Mismatch as e:
            return CheckResult(name=name, passed=False, cases=0, detail=str(e))
        except (GaloisCensusError, FileNotFoundError) as e:
            return CheckResult(
                name=name, passed=False, cases=0, detail=f"{type(e).__name__}: {e}"
            )
        return CheckResult(name=name, passed=True, cases=cases)

    @staticmethod
    def _expect(actual, expected, what: str) -> None:
        if actual != expected:
            raise _Mismatch(f"{what}: got {actual}, expected {expected}")

    def check_congruence_roots(self) -> int:
        cases = 0
        for p in primerange(2, VERIFY_CONGRUENCE_LIMIT + 1):
            beta, modulus = 1, p
            while modulus <= VERIFY_CONGRUENCE_LIMIT:
                for kind in CongruenceKind:
                    scanned = sum(
                        1 for z in range(modulus) if kind.evaluate(z) % modulus == 0
                    )
                    self._expect(
                        count_congruence_roots(kind, p, beta),
                        scanned,
                        f"roots of {kind.value} mod {p}^{beta}",
                    )
                    cases += 1
                beta += 1
                modulus *= p
        return cases

    def check_sigma(self) -> int:
        # Divisor sums by sieving every divisor into its multiples
        sums = [0] * (VERIFY_SIGMA_LIMIT + 1)
        for d in range(1, VERIFY_SIGMA_LIMIT + 1):
            for k in range(d, VERIFY_SIGMA_LIMIT + 1, d):
                sums[k] += d
        for m in range(1, VERIFY_SIGMA_LIMIT + 1):
            self._expect(sigma(m), sums[m], f"sigma({m})")
        return VERIFY_SIGMA_LIMIT

    def check_oracle_equivalence(self) -> int:
        cases = 0
        for ell in SUPPORTED_ELLS:
            j = curve_class_for(ell)
            for m in range(1, self.max_m + 1):
                action = aut_action(ell, m)
                oracle = {
                    s
                    for s in closure_oracle_enumerate(m, bound=self.max_m)
                    if is_stable(s, action)
                }
                constructive = enumerate_stable_subgroups(ell, m, self.constructive_max)
                what = f"ell={ell}, m={m}"
                self._expect(len(oracle), psi(ell, j, m), f"oracle count ({what})")
                self._expect(
                    len(constructive), psi(ell, j, m), f"constructive count ({what})"
                )
                if set(constructive) != oracle:
                    raise _Mismatch(
                        f"Oracle and constructive subgroups differ ({what})"
                    )
                cases += 1
        return cases

    def check_constructive_count(self) -> int:
        cases = 0
        for m in range(1, self.constructive_max + 1):
            fingerprints = {}
            for ell in SUPPORTED_ELLS:
                subgroups = enumerate_stable_subgroups(ell, m, self.constructive_max)
                self._expect(
                    len(subgroups),
                    psi(ell, curve_class_for(ell), m),
                    f"constructive count for ell={ell}, m={m}",
                )
                # ell = 6 shares the congruence of ell = 3; test against its own matrix
                action = aut_action(ell, m)
                for subgroup in subgroups:
                    if not is_stable(subgroup, action):
                        raise _Mismatch(
                            f"{subgroup.describe()} is not stable for ell={ell}, m={m}"
                        )
                if ell in (3, 6):
                    fingerprints[ell] = {s.fingerprint for s in subgroups}
                cases += 1
            if fingerprints[3] != fingerprints[6]:
                raise _Mismatch(f"ell=3 and ell=6 subgroups differ for m={m}")
        return cases

    def check_psi_identities(self) -> int:
        for m in range(1, VERIFY_PSI_IDENTITY_LIMIT + 1):
            self._expect(psi(2, JClass.GENERIC, m), sigma(m), f"psi_2({m})")
            self._expect(
                psi(3, JClass.J0, m), psi(6, JClass.J0, m), f"psi_3({m}) vs psi_6({m})"
            )
        return 2 * VERIFY_PSI_IDENTITY_LIMIT

    def check_multiplicativity(self) -> int:
        rng = random.Random(self.seed)
        cases = 0
        while cases < VERIFY_MULTIPLICATIVE_PAIRS:
            a = rng.randint(2, VERIFY_MULTIPLICATIVE_LIMIT // 2)
            b = rng.randint(2, VERIFY_MULTIPLICATIVE_LIMIT // a)
            if math.gcd(a, b) != 1:
                continue
            for ell in SUPPORTED_ELLS:
                j = curve_class_for(ell)
                self._expect(
                    psi(ell, j, a * b),
                    psi(ell, j, a) * psi(ell, j, b),
                    f"psi_{ell}({a}*{b})",
                )
            cases += 1
        return cases

    def check_reference_tables(self) -> int:
        tables = ReferenceTables.load(self.reference_path)
        cases = 0
        for N in sorted(tables.census):  # noqa: N806
            for j in JClass:
                report = component_census(j, N + 1)
                self._expect(
                    report.counts_by_dimension(),
                    tables.census_rows(N, j),
                    f"census rows for N={N}, j={j.value}",
                )
                self._expect(
                    report.total_components,
                    tables.census_total(N, j),
                    f"census total for N={N}, j={j.value}",
                )
                cases += 1
        for ell, m, value in tables.psi_entries():
            self._expect(psi(ell, curve_class_for(ell), m), value, f"psi_{ell}({m})")
            cases += 1
        if cases == 0:
            raise _Mismatch(f"No reference entries in {self.reference_path}")
        return cases

    def check_generic_formulas(self) -> int:
        for N in range(2, VERIFY_INTRO_MAX_N + 1):  # noqa: N806
            report = component_census(JClass.GENERIC, N + 1)
            counts = dict(report.counts_by_dimension())
            self._expect(counts, generic_census_formula(N), f"generic census N={N}")
            half = (N + 1) // 2
            expected_points = half * sigma(half) if N % 2 else 0
            self._expect(counts[0], expected_points, f"generic points N={N}")
        return VERIFY_INTRO_MAX_N - 1

    def check_coefficient_identity(self) -> int:
        cases = 0
        for ell in SUPPORTED_ELLS:
            for m in range(1, VERIFY_CENSUS_MAX_N + 1):
                self._expect(
                    deg_epsilon(ell, m),
                    DEGREE_COEFFICIENTS[ell] * m * m,
                    f"deg epsilon for ell={ell}, m={m}",
                )
                cases += 1
        for n in range(3, VERIFY_CENSUS_MAX_N + 1):
            for ell in SUPPORTED_ELLS:
                if n % ell:
                    continue
                self._expect(
                    groups_per_translation_subgroup(ell, n // ell),
                    GROUPS_PER_H[ell](n),
                    f"groups per H for ell={ell}, n={n}",
                )
                cases += 1
        return cases

    def check_census_consistency(self) -> int:
        cases = 0
        for n in range(3, VERIFY_CENSUS_MAX_N + 1):
            for j in JClass:
                report = component_census(j, n)
                inventory = sum(e.total for e in disjoint_group_inventory(j, n))
                self._expect(inventory, disjoint_count(j, n), f"inventory n={n}")
                self._expect(
                    report.count_for_dimension(0), inventory, f"points n={n}"
                )
                self._expect(
                    report.total_components,
                    sum(r.count for r in report.records),
                    f"total n={n}, j={j.value}",
                )
                for record in report.records:
                    if record.dimension == 0:
                        continue
                    self._expect(
                        record.count,
                        sum(c.psi_count for c in record.constituents),
                        f"record n={n}, dimension={record.dimension}",
                    )
                cases += 1
        for n in range(3, VERIFY_PAIRS_MAX_N + 1):
            for j in JClass:
                report = component_census(j, n)
                pairs = component_pairs(j, n, self.constructive_max)
                for dimension in range(1, n - 1):
                    self._expect(
                        sum(1 for pair in pairs if pair.dimension == dimension),
                        report.count_for_dimension(dimension),
                        f"pairs n={n}, j={j.value}, dimension={dimension}",
                    )
                cases += 1
        return cases

    def check_witness(self) -> int:
        rng = random.Random(self.seed)
        cases = 0
        for label, m, min_prime in WITNESS_CONFIGURATIONS:
            j = JClass.from_label(label)
            curve = search_curve(j, m, min_prime=min_prime)
            logger.info(f"Witness curve for j={label}, m={m}: {curve}")
            for ell in j.admissible_ells:
                for point in curve.points:
                    image = point
                    for _ in range(ell):
                        image = apply_aut(curve, ell, image)
                    self._expect(
                        image, point, f"automorphism of order {ell} on {curve}"
                    )

                self._expect(
                    len(stable_point_subgroups(curve, ell, m)),
                    psi(ell, j, m),
                    f"stable subgroups for ell={ell}, m={m} on {curve}",
                )
                samples = random_witness_configurations(
                    curve, ell, m, VERIFY_WITNESS_SAMPLES, rng
                )
                for h_points, q, q2 in samples:
                    if not divisor_sum_check(curve, ell, h_points, q):
                        raise _Mismatch(
                            f"Divisor sum differs from epsilon(q) for q={q}, "
                            f"|H|={len(h_points)}, ell={ell} on {curve}"
                        )
                    # Raises WitnessError when the coset criterion disagrees
                    group_equality_check(curve, ell, h_points, q, q2)
                    cases += 1
        return cases
