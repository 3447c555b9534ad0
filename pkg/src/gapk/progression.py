"""Geometric-arithmetic progressions p1*r**j + j*d and their necessary conditions."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .arith import (
    DEFAULT_ROUNDS,
    PrimalityVerdict,
    decimal_digits,
    is_prime,
    probably_prime,
    smallest_prime_factor,
)

MAX_K = 10_000


@dataclass(frozen=True)
class GapTriple:
    """Start ``p1``, ratio ``r`` and difference ``d`` of a candidate progression."""

    p1: int
    r: int
    d: int

    def __post_init__(self):
        if self.p1 < 1 or self.r < 1:
            raise ValueError(f"need p1 >= 1 and r >= 1, got {self}")

    def term(self, j: int) -> int:
        return term(self, j)

    def terms(self, start_j: int, count: int) -> list[int]:
        """``count`` consecutive terms from ``start_j``, built incrementally."""
        out = []
        power = self.p1 * self.r**start_j
        for j in range(start_j, start_j + count):
            out.append(power + j * self.d)
            power *= self.r
        return out

    def __str__(self):
        return f"({self.p1}, {self.r}, {self.d})"


def term(t: GapTriple, j: int) -> int:
    """Exact value of the j-th term, ``p1 * r**j + j * d``."""
    if j < 0:
        raise ValueError("term index must be >= 0")
    return t.p1 * t.r**j + j * t.d


class Violation(enum.Enum):
    D_ODD = "d-odd"
    P1_NOT_ODD_PRIME = "p1-not-odd-prime"
    R_NOT_ODD = "r-not-odd"
    P1_NOT_COPRIME_D = "p1-not-coprime-d"
    R_NOT_COPRIME_D = "r-not-coprime-d"


class SpecialCase(enum.Enum):
    GENERIC = "generic"
    R_IS_ONE = "r-is-one"
    P1_IS_ONE = "p1-is-one"
    BOTH_ONE = "both-one"


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    violations: tuple[Violation, ...]
    max_order: int
    special_case: SpecialCase


def _special_case(t: GapTriple) -> SpecialCase:
    if t.p1 == 1 and t.r == 1:
        return SpecialCase.BOTH_ONE
    if t.p1 == 1:
        return SpecialCase.P1_IS_ONE
    if t.r == 1:
        return SpecialCase.R_IS_ONE
    return SpecialCase.GENERIC


def max_order(t: GapTriple) -> int:
    """Upper bound on the length of any prime run of the progression."""
    case = _special_case(t)
    if case is SpecialCase.BOTH_ONE:
        return 3
    if case is SpecialCase.P1_IS_ONE:
        return smallest_prime_factor(t.r) - 1
    if case is SpecialCase.R_IS_ONE:
        return t.p1
    return min(t.p1, smallest_prime_factor(t.r))


def admissible(t: GapTriple, k: int | None = None) -> AdmissibilityReport:
    """Check the necessary conditions for ``t`` to produce a GAP.

    For ``k == 2`` only coprimality of ``p1*r`` with ``d`` is required;
    pairs such as (2, 17) from (2, 6, 5) are legitimate.
    """
    case = _special_case(t)
    violations = []
    if k == 2:
        if math.gcd(t.p1, t.d) != 1:
            violations.append(Violation.P1_NOT_COPRIME_D)
        if math.gcd(t.r, t.d) != 1:
            violations.append(Violation.R_NOT_COPRIME_D)
    else:
        if t.d % 2:
            violations.append(Violation.D_ODD)
        if t.p1 != 1 and (t.p1 % 2 == 0 or not is_prime(t.p1)):
            violations.append(Violation.P1_NOT_ODD_PRIME)
        if t.r % 2 == 0:
            violations.append(Violation.R_NOT_ODD)
        if math.gcd(t.p1, t.d) != 1:
            violations.append(Violation.P1_NOT_COPRIME_D)
        if math.gcd(t.r, t.d) != 1:
            violations.append(Violation.R_NOT_COPRIME_D)
    return AdmissibilityReport(not violations, tuple(violations), max_order(t), case)


@dataclass(frozen=True)
class GapInstance:
    """A verified run of ``k`` (probable) primes starting at index ``start_j``."""

    triple: GapTriple
    start_j: int
    k: int
    terms: tuple[int, ...]
    verdicts: tuple[PrimalityVerdict, ...] = field(repr=False)
    exceeds_max_order: bool = False

    @property
    def digits_first(self) -> int:
        return decimal_digits(self.terms[0])

    @property
    def digits_last(self) -> int:
        return decimal_digits(self.terms[-1])

    @property
    def probable(self) -> bool:
        """True when any term is only a probable prime."""
        return any(v.probable for v in self.verdicts)

    def to_dict(self) -> dict:
        t = self.triple
        return {
            "k": self.k,
            "p1": str(t.p1),
            "r": str(t.r),
            "d": str(t.d),
            "start_j": self.start_j,
            "terms": [str(x) for x in self.terms],
            "digits_first": self.digits_first,
            "digits_last": self.digits_last,
            "probable": self.probable,
        }


@dataclass(frozen=True)
class GapFailure:
    """Why a verification failed. Falsy, so ``if verify_gap(...)`` reads naturally."""

    triple: GapTriple
    k: int
    start_j: int
    failed_index: int
    value: int
    verdict: PrimalityVerdict | None
    reason: str
    exceeds_max_order: bool = False

    def __bool__(self) -> bool:
        return False


def verify_gap(t: GapTriple, k: int, start_j: int = 0, rounds: int = DEFAULT_ROUNDS) -> GapInstance | GapFailure:
    """Check that the ``k`` terms from ``start_j`` on are all (probable) primes."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if k > MAX_K:
        raise ValueError(f"k is capped at {MAX_K}")
    if start_j < 0:
        raise ValueError("start_j must be >= 0")
    exceeds = k > max_order(t)
    values = t.terms(start_j, k)
    verdicts = []
    for j, value in enumerate(values, start=start_j):
        if value < 2:
            if value == 1 and j == 0:
                reason = "leading 1 is not prime; start at j = 1"
            else:
                reason = "term below 2"
            return GapFailure(t, k, start_j, j, value, None, reason, exceeds)
        v = is_prime(value, rounds)
        if not v:
            return GapFailure(t, k, start_j, j, value, v, "composite", exceeds)
        verdicts.append(v)
    return GapInstance(t, start_j, k, tuple(values), tuple(verdicts), exceeds)


def gap_run_length(t: GapTriple, start_j: int, j_limit: int) -> int:
    """Length of the prime run starting at ``start_j``, not looking past ``j_limit``."""
    if start_j < 0 or j_limit < start_j:
        raise ValueError("need 0 <= start_j <= j_limit")
    power = t.p1 * t.r**start_j
    n = 0
    for j in range(start_j, j_limit + 1):
        if not probably_prime(power + j * t.d):
            break
        n += 1
        power *= t.r
    return n
