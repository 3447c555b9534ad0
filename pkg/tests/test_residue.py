import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapk.arith import primes_up_to
from gapk.residue import (
    FormKind,
    Outcome,
    analyze_modulus,
    common_factor,
    factor_label,
    forbidden_residues,
    killing_residues,
    residue_forms,
)


def test_forms_mod5_for_seven():
    forms = residue_forms(7, 7, 7, 5)
    assert [str(f) for f in forms] == ["2", "4 + d", "3 + 2 d", "1 + 3 d", "2 + 4 d", "4", "3 + d"]
    assert [f.kind for f in forms].count(FormKind.NUMERIC) == 2


def test_forms_mod3_for_five():
    assert [str(f) for f in residue_forms(5, 5, 5, 3)] == ["2", "1 + d", "2 + 2 d", "1", "2 + d"]


@pytest.mark.parametrize(
    "args, forbidden, outcome",
    [
        ((5, 5, 5, 3), {1, 2}, Outcome.FORCED),
        ((7, 7, 7, 3), {1, 2}, Outcome.FORCED),
        ((7, 7, 7, 5), {1, 2, 3}, Outcome.UNFORCED),
        ((2, 2, 2, 3), {2}, Outcome.UNFORCED),
        ((5, 5, 5, 5), {0}, Outcome.EXEMPT),
        ((3, 1, 2, 3), {0}, Outcome.EXEMPT),
    ],
)
def test_analyze_modulus(args, forbidden, outcome):
    a = analyze_modulus(*args)
    assert a.forbidden == forbidden and a.outcome is outcome
    assert a.allowed == frozenset(range(args[3])) - forbidden


def test_repeated_forbidden_residue_is_degenerate():
    a = analyze_modulus(7, 7, 7, 3)
    assert [f.j for f in a.degenerate()] == [4, 5]


def test_impossible_when_nonexempt_term_is_multiple():
    # p1 = 3 with k = 4: the j = 3 term 3*3**3 + 3d is a multiple of 3 above 3
    a = analyze_modulus(3, 3, 4, 3)
    assert a.outcome is Outcome.IMPOSSIBLE
    cert = common_factor(3, 3, 4)
    assert cert.impossible and cert.impossible_moduli == (3,)


def test_modulus_must_be_odd_prime():
    for q in (2, 9, 1):
        with pytest.raises(ValueError):
            residue_forms(5, 5, 5, q)


@pytest.mark.parametrize(
    "p1, r, k, factor",
    [(11, 11, 8, 30), (37, 37, 32, 43890), (13, 11, 11, 30), (2, 2, 2, 1), (5, 5, 5, 6), (7, 7, 6, 6)],
)
def test_common_factor_examples(p1, r, k, factor):
    assert common_factor(p1, r, k).common_factor == factor


def test_common_factor_divides_known_differences():
    for (p1, r, k), d in {(5, 5, 5): 84, (7, 7, 6): 144, (7, 7, 7): 3324, (11, 11, 8): 62610,
                          (11, 11, 9): 903030, (11, 11, 10): 903030}.items():
        assert d % common_factor(p1, r, k).common_factor == 0


@pytest.mark.parametrize(
    "primes, label",
    [
        ([2, 3, 5, 7, 11, 13, 19, 29], "29*19*13#"),
        ([2, 3, 5, 13, 19, 29], "29*19*13*5#"),
        ([2], "2"),
        ([], "1"),
        ([3, 5], "5*3"),
        ([2, 3, 5, 7, 11, 13, 17, 19, 23], "23#"),
        ([2, 3, 5, 7, 11, 19], "19*11#"),
    ],
)
def test_factor_label(primes, label):
    assert factor_label(primes) == label


def test_label_round_trips_to_product():
    from gapk.expr import parse_int

    for k in range(3, 60):
        cert = common_factor(k if k % 2 else k + 1, 3, k)
        assert parse_int(cert.label) == cert.common_factor


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([int(p) for p in primes_up_to(60)[1:]]), st.sampled_from([3, 5, 7, 9, 15, 21, 25]),
       st.integers(2, 40))
def test_common_factor_monotone_in_k(p1, r, k):
    a, b = common_factor(p1, r, k), common_factor(p1, r, k + 1)
    if not a.impossible:
        assert b.common_factor % a.common_factor == 0


@settings(max_examples=200)
@given(st.integers(1, 10**6), st.integers(1, 10**4), st.integers(2, 12),
       st.sampled_from([3, 5, 7, 11, 13]), st.integers(0, 10**6))
def test_forbidden_residue_makes_term_divisible(p1, r, k, q, d):
    for f in residue_forms(p1, r, k, q):
        value = p1 * r**f.j + f.j * d
        assert value % q == (f.c + f.b * d) % q
        if f.kind is FormKind.ACTIVE:
            assert (value % q == 0) == (d % q == f.forbidden)


def test_forced_means_d_multiple_of_q():
    # every d that leaves all terms free of q must be 0 mod q when q is forced
    for p1, r, k in [(5, 5, 5), (7, 7, 7), (11, 11, 10), (13, 13, 12)]:
        for a in common_factor(p1, r, k).analyses:
            if a.outcome is Outcome.FORCED:
                assert a.allowed == {0}


def test_forbidden_residues_matches_analysis():
    assert forbidden_residues(7, 7, 7, 5) == analyze_modulus(7, 7, 7, 5).forbidden


def test_killing_residues_include_two():
    all_killed, res = killing_residues(5, 5, 2, range(1, 3))
    assert not all_killed and res == {1}
    assert killing_residues(3, 3, 3, [3])[0]


def test_certificate_report_and_dict():
    cert = common_factor(11, 11, 10)
    text = cert.report()
    assert "common factor: 30 = 5#" in text and "mod 3" in text and "mod 5" in text
    d = cert.to_dict()
    assert d["common_factor"] == "30" and d["label"] == "5#" and d["forced_primes"] == [2, 3, 5]
    assert math.prod(d["forced_primes"]) == 30
