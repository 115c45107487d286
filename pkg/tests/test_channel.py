import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irc_gdof import DomainError, LinearChannel, StrengthExponents, capacity, capacity_plus, realize, recover_exponents


@pytest.mark.parametrize("x, expected", [(0, 0.0), (3, 1.0), (1, 0.5)])
def test_capacity_values(x, expected):
    assert capacity(x) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("x, expected", [(-0.5, 0.0), (0, 0.0), (3, 1.0)])
def test_capacity_plus_values(x, expected):
    assert capacity_plus(x) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("x", [-1, -2.5, float("nan")])
def test_capacity_domain(x):
    with pytest.raises(DomainError):
        capacity(x)
    with pytest.raises(DomainError):
        capacity_plus(x)


def test_capacity_accepts_arrays():
    out = capacity(np.array([0.0, 1.0, 3.0]))
    assert np.allclose(out, [0.0, 0.5, 1.0])
    assert isinstance(capacity(1.0), float)


@given(st.floats(min_value=-0.999, max_value=1e12), st.floats(min_value=1e-6, max_value=1e6))
def test_capacity_strictly_increasing(x, dx):
    assert capacity(x + dx) > capacity(x) or dx < 1e-12 * max(1, abs(x))


@given(st.floats(min_value=-0.99, max_value=1e6), st.floats(min_value=-0.99, max_value=1e6))
def test_capacity_midpoint_concave(a, b):
    mid = capacity((a + b) / 2)
    assert mid >= (capacity(a) + capacity(b)) / 2 - 1e-12


@given(st.floats(min_value=-0.999, max_value=1e9))
def test_capacity_plus_matches_capacity_on_positive_axis(x):
    if x >= 0:
        assert capacity_plus(x) == capacity(x)
    else:
        assert capacity_plus(x) == 0.0


def test_realize_equal_exponents():
    ch = realize(StrengthExponents(1, 1, 1), 100)
    for v in (ch.snr_d, ch.snr_c, ch.snr_r, ch.snr_sr):
        assert v == pytest.approx(100, rel=1e-14)


def test_realize_power_laws():
    ch = realize(StrengthExponents(0.5, 2, 0.5), 100)
    assert ch.h_d == 1 and ch.power == 100
    assert ch.snr_c == pytest.approx(10, rel=1e-14)
    assert ch.snr_r == pytest.approx(10000, rel=1e-14)
    assert ch.snr_sr == pytest.approx(10, rel=1e-14)


def test_realize_rejects_small_snr():
    with pytest.raises(DomainError):
        realize(StrengthExponents(1, 1, 1), 1.0)


def test_recover_unit_gains():
    e = recover_exponents(LinearChannel(1, 1, 1, 1, 100))
    assert e.as_tuple() == pytest.approx((1, 1, 1), abs=1e-15)


def test_recover_by_hand():
    ch = LinearChannel(1, math.sqrt(0.1), 1, 1, 100)
    assert recover_exponents(ch).alpha == pytest.approx(0.5, abs=1e-12)


def test_recover_round_trip_example():
    e = recover_exponents(realize(StrengthExponents(0.7, 1.1, 0.2), 1e10))
    assert e.as_tuple() == pytest.approx((0.7, 1.1, 0.2), abs=1e-9)


@pytest.mark.parametrize("ch", [
    LinearChannel(1, 1, 1, 1, 1.0),     # h_d^2 P = 1
    LinearChannel(0, 1, 1, 1, 100),
    LinearChannel(1, 0, 1, 1, 100),     # zero product
    LinearChannel(1, 0.01, 1, 1, 100),  # negative exponent
])
def test_recover_domain_errors(ch):
    with pytest.raises(DomainError):
        recover_exponents(ch)


@settings(max_examples=300)
@given(
    st.floats(0, 3), st.floats(0, 3), st.floats(0, 3),
    st.floats(3, 30),
)
def test_round_trip_property(a, b, g, log_snr):
    e = StrengthExponents(a, b, g)
    back = recover_exponents(realize(e, 10.0**log_snr))
    assert back.as_tuple() == pytest.approx(e.as_tuple(), abs=1e-9)


@pytest.mark.parametrize("bad", [dict(alpha=-0.1), dict(beta=float("inf")), dict(gamma=float("nan"))])
def test_exponents_validate(bad):
    kw = dict(alpha=1.0, beta=1.0, gamma=1.0) | bad
    with pytest.raises(DomainError):
        StrengthExponents(**kw)


def test_channel_validates():
    with pytest.raises(DomainError):
        LinearChannel(1, -1, 0, 0, 1)
    with pytest.raises(DomainError):
        LinearChannel(1, 1, 0, 0, 0)
