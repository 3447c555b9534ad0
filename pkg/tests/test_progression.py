import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import isprime

from gapk.arith import smallest_prime_factor
from gapk.progression import (
    GapFailure,
    GapInstance,
    GapTriple,
    SpecialCase,
    Violation,
    admissible,
    gap_run_length,
    term,
    verify_gap,
)


@pytest.mark.parametrize(
    "triple, j, expected",
    [((3, 5, 2), 2, 79), ((5, 5, 4), 7, 390653), ((17, 3, 8), 0, 17), ((5, 5, -100), 1, -75)],
)
def test_term(triple, j, expected):
    assert term(GapTriple(*triple), j) == expected


def test_term_rejects_negative_index():
    with pytest.raises(ValueError):
        term(GapTriple(3, 5, 2), -1)


def test_triple_requires_positive_start_and_ratio():
    with pytest.raises(ValueError):
        GapTriple(0, 5, 2)
    with pytest.raises(ValueError):
        GapTriple(3, 0, 2)


@given(st.integers(1, 10**6), st.integers(1, 10**4), st.integers(-(10**9), 10**9), st.integers(1, 60))
def test_consecutive_difference_identity(p1, r, d, j):
    t = GapTriple(p1, r, d)
    assert term(t, j) - term(t, j - 1) == p1 * r ** (j - 1) * (r - 1) + d


def test_terms_matches_term():
    t = GapTriple(11, 35, 534)
    assert t.terms(2, 4) == [term(t, j) for j in range(2, 6)]


def test_admissible_minimal_gap5():
    rep = admissible(GapTriple(5, 5, 114))
    assert rep.admissible and rep.max_order == 5 and rep.special_case is SpecialCase.GENERIC


def test_admissible_odd_d_not_coprime():
    rep = admissible(GapTriple(5, 5, 115))
    assert not rep.admissible
    assert {Violation.D_ODD, Violation.P1_NOT_COPRIME_D} <= set(rep.violations)


def test_admissible_composite_ratio():
    rep = admissible(GapTriple(7, 15, 2))
    assert rep.admissible and rep.max_order == 3


def test_admissible_start_one():
    rep = admissible(GapTriple(1, 7, 720))
    assert rep.admissible and rep.special_case is SpecialCase.P1_IS_ONE and rep.max_order == 6


def test_admissible_both_one():
    rep = admissible(GapTriple(1, 1, 2))
    assert rep.special_case is SpecialCase.BOTH_ONE and rep.max_order == 3


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_ratio_one_reduces_to_ap_bound(p):
    rep = admissible(GapTriple(p, 1, 6))
    assert rep.special_case is SpecialCase.R_IS_ONE and rep.max_order == p


@pytest.mark.parametrize("p1, r, d", [(2, 6, 5), (3, 2, 1), (7, 100, 211), (2, 2, 1)])
def test_gap2_uses_coprimality_only(p1, r, d):
    t = GapTriple(p1, r, d)
    assert admissible(t, k=2).admissible
    assert not admissible(t).admissible
    assert verify_gap(t, 2)


def test_gap2_coprimality_violation():
    rep = admissible(GapTriple(3, 4, 6), k=2)
    assert Violation.P1_NOT_COPRIME_D in rep.violations and Violation.R_NOT_COPRIME_D in rep.violations


@pytest.mark.parametrize("p1", [3, 5, 7, 11, 13, 17, 19, 23])
@pytest.mark.parametrize("r", [3, 5, 9, 15, 21, 25, 35, 49])
@pytest.mark.parametrize("d", [2, 4, 30, 114, 2310])
def test_forced_composite_positions(p1, r, d):
    t = GapTriple(p1, r, d)
    assert term(t, p1) % p1 == 0
    q = smallest_prime_factor(r)
    assert term(t, q) % q == 0


@pytest.mark.parametrize(
    "triple, k, terms",
    [
        ((7, 5, 12), 5, (7, 47, 199, 911, 4423)),
        ((11, 35, 534), 5, (11, 919, 14543, 473227, 16509011)),
        ((3, 5, 2), 3, (3, 17, 79)),
        ((7, 15, 2), 3, (7, 107, 1579)),
        ((5, 5, 114), 5, (5, 139, 353, 967, 3581)),
    ],
)
def test_verify_gap_success(triple, k, terms):
    inst = verify_gap(GapTriple(*triple), k)
    assert isinstance(inst, GapInstance)
    assert inst.terms == terms and len(inst.verdicts) == k
    assert not inst.exceeds_max_order


def test_verify_gap_start_one_needs_shift():
    t = GapTriple(1, 7, 720)
    fail = verify_gap(t, 5, 0)
    assert isinstance(fail, GapFailure) and fail.failed_index == 0 and "j = 1" in fail.reason
    inst = verify_gap(t, 5, 1)
    assert inst.terms == (727, 1489, 2503, 5281, 20407)


def test_verify_gap_failure_reports_first_composite():
    fail = verify_gap(GapTriple(5, 5, 114), 6)
    assert not fail
    assert fail.failed_index == 5 and fail.value == 16195 == 5 * 3239
    assert fail.verdict.witness == 5
    assert fail.exceeds_max_order


def test_verify_gap_negative_difference():
    # 7, 7*3 - 4 = 17; a negative d is allowed as long as the terms stay >= 2
    t = GapTriple(7, 3, -4)
    assert verify_gap(t, 2).terms == (7, 17)
    fail = verify_gap(GapTriple(3, 3, -10), 2)
    assert fail.failed_index == 1 and fail.reason == "term below 2"


def test_verify_gap_both_one():
    assert verify_gap(GapTriple(1, 1, 2), 3, 1).terms == (3, 5, 7)


def test_verify_gap_argument_checks():
    with pytest.raises(ValueError):
        verify_gap(GapTriple(3, 3, 2), 1)
    with pytest.raises(ValueError):
        verify_gap(GapTriple(3, 3, 2), 10_001)


def test_instance_digits_and_dict():
    inst = verify_gap(GapTriple(2**127 - 1, 3, 7390), 3)
    assert (inst.digits_first, inst.digits_last) == (39, 40)
    assert inst.probable
    d = inst.to_dict()
    assert d["terms"][0] == str(2**127 - 1) and d["probable"] is True and d["k"] == 3


@pytest.mark.parametrize(
    "triple, start, limit, expected",
    [((5, 5, 114), 0, 20, 5), ((5, 5, 114), 5, 20, 0), ((2, 2, 1), 0, 20, 2), ((5, 5, 4), 7, 20, 3), ((5, 5, 114), 0, 3, 4)],
)
def test_gap_run_length(triple, start, limit, expected):
    assert gap_run_length(GapTriple(*triple), start, limit) == expected


@given(st.integers(3, 40), st.integers(2, 40), st.integers(0, 400).map(lambda x: 2 * x), st.integers(2, 6))
def test_verify_implies_run_length(p1, r, d, k):
    t = GapTriple(p1, r, d)
    brute = all(isprime(term(t, j)) for j in range(k))
    assert bool(verify_gap(t, k)) == brute
    if brute:
        assert gap_run_length(t, 0, 50) >= k


@pytest.mark.parametrize(
    "triple, k, failed_index",
    [((103, 103, 2900641 * 223092870), 11, 1), ((2**521 - 1, 5, 33936 * 2), 4, 3)],
)
def test_rows_with_composite_terms(triple, k, failed_index):
    fail = verify_gap(GapTriple(*triple), k)
    assert not fail and fail.failed_index == failed_index
    assert not isprime(fail.value)
