import pytest
from hypothesis import given
from hypothesis import strategies as st

from gapk.expr import ExpressionError, parse_int


@pytest.mark.parametrize(
    "text, value",
    [
        ("14789586(5#)", 443687580),
        ("2^127-1", 2**127 - 1),
        ("2**521 - 1", 2**521 - 1),
        ("19*11#", 19 * 2310),
        ("2900641*23#", 2900641 * 223092870),
        ("-4", -4),
        ("2^3^2", 512),
        ("(3+4)(5)", 35),
        ("0#", 1),
        ("156497 2310", 156497 * 2310),
    ],
)
def test_parse_examples(text, value):
    assert parse_int(text) == value


@pytest.mark.parametrize("text", ["", "2^", "3 +", "(4", "4)", "x", "2^-1", "1.5", "#5", "2^9999999999"])
def test_parse_errors(text):
    with pytest.raises(ExpressionError):
        parse_int(text)


@given(st.integers(-(10**30), 10**30))
def test_plain_integers_round_trip(n):
    assert parse_int(str(n)) == n


@given(st.integers(0, 10**9), st.integers(0, 10**9), st.integers(0, 30))
def test_arithmetic_matches_python(a, b, e):
    assert parse_int(f"{a}*{b}-{a}+{b}^{e % 4}") == a * b - a + b ** (e % 4)
