import pytest
from hypothesis import given, settings, strategies as st

from ultracoh.scalars import INF, LaurentField, PrecisionError, TruncSeries


def naive_mul(a, b):
    """Digits of a*b by schoolbook convolution over a dict, with the usual precision rule."""
    p = a.p
    prec = min(a.prec + (b.lead if b.coeffs else b.prec), b.prec + (a.lead if a.coeffs else a.prec))
    out = {}
    for i, x in enumerate(a.coeffs):
        for j, y in enumerate(b.coeffs):
            e = a.lead + i + b.lead + j
            out[e] = (out.get(e, 0) + x * y) % p
    return {e: c for e, c in out.items() if c and e < prec}, prec


def digits(x):
    return {x.lead + k: c for k, c in enumerate(x.coeffs) if c}


series = st.builds(
    lambda p, lead, cs, extra: TruncSeries(p, lead, cs, lead + len(cs) + extra),
    st.sampled_from([2, 3, 5]), st.integers(-3, 3),
    st.lists(st.integers(0, 4), min_size=1, max_size=6), st.integers(0, 2))


@given(series, series)
def test_mul_matches_convolution(a, b):
    b = TruncSeries(a.p, b.lead, b.coeffs, b.prec)
    got = a * b
    want, prec = naive_mul(a, b)
    assert got.prec == prec
    assert digits(got) == want


@given(series)
def test_inverse_times_self_is_one(x):
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            x.inverse()
        return
    y = x * x.inverse()
    assert (y - 1).is_zero()
    assert x.inverse().valuation() == -x.valuation()


@settings(max_examples=50)
@given(series, series, series)
def test_ring_axioms(a, b, c):
    b = TruncSeries(a.p, b.lead, b.coeffs, b.prec)
    c = TruncSeries(a.p, c.lead, c.coeffs, c.prec)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a


def test_valuation_and_zero():
    F = LaurentField(3, 6)
    assert F.zero.valuation() == INF
    x = F.monomial(2) + F.monomial(4)
    assert x.valuation() == 2
    assert (x * F.monomial(-1)).valuation() == 1
    assert F(3).is_zero()          # 3 = 0 in F_3


def test_digit_beyond_precision_raises():
    x = TruncSeries(2, 0, [1, 1], 2)
    assert x.digit(1) == 1
    with pytest.raises(PrecisionError):
        x.digit(2)


def test_json_round_trip():
    x = TruncSeries(5, -2, [3, 0, 1], 4)
    y = TruncSeries.from_json(x.to_json())
    assert y.to_json() == x.to_json()


def test_mismatched_primes():
    with pytest.raises(ValueError):
        TruncSeries(2, 0, [1], 4) + TruncSeries(3, 0, [1], 4)


def test_power_frobenius():
    # (1 + t)^p = 1 + t^p in characteristic p
    for p in (2, 3, 5):
        x = TruncSeries(p, 0, [1, 1], 12)
        assert x ** p == TruncSeries(p, 0, [1] + [0] * (p - 1) + [1], 12)
