from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nba_lab import INF, ExtendedRational
from nba_lab.extended import ext_min, format_rational, parse_rational

rationals = st.fractions(max_denominator=50).filter(lambda q: q >= 0)
values = st.one_of(rationals.map(ExtendedRational), st.just(INF))


def test_parse_and_format():
    assert parse_rational("3/6") == F(1, 2)
    assert parse_rational("-4") == -4
    assert format_rational(F(2, 4)) == "1/2"
    assert format_rational(7) == "7"
    for bad in ("1.5", "1/0", "", "a/b"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_infinity_arithmetic():
    assert INF + 1 == INF
    assert ExtendedRational(F(1, 3)) + F(1, 6) == ExtendedRational(F(1, 2))
    assert INF > ExtendedRational(10**9)
    assert ext_min(INF, ExtendedRational(2)) == ExtendedRational(2)
    assert INF.to_json() == "inf"
    assert ExtendedRational.from_json("inf") == INF
    with pytest.raises(ValueError):
        INF.value


@given(values, values)
def test_order_is_total(a, b):
    assert (a < b) + (a == b) + (a > b) == 1
    assert (a <= b) == (not a > b)


@given(values)
def test_json_roundtrip(a):
    assert ExtendedRational.from_json(a.to_json()) == a
