"""Scalar primitives: capacity function, dB handling, regime classification."""
import math

import pytest
from hypothesis import given, strategies as st

from zrelay.core import (
    ChannelParams,
    RegimeLabel,
    classify_type1,
    classify_type2,
    db_to_linear,
    gamma,
    inr2_dagger,
    inr2_ddagger,
    inr2_section,
    inr2_star,
    linear_to_db,
)

# frozen with a 40-digit independent evaluation of 0.5*log2(1+x)
GAMMA_FIG4_ARG = 1316.2278
GAMMA_FIG4_VALUE = 5.181644575003289


def test_gamma_trivial_values():
    assert gamma(0.0) == 0.0
    assert gamma(3.0) == pytest.approx(1.0, abs=1e-15)


def test_gamma_fig4_sum_argument():
    value = gamma(GAMMA_FIG4_ARG)
    assert value == pytest.approx(GAMMA_FIG4_VALUE, rel=1e-12)
    assert value == pytest.approx(5.1822, abs=1e-3)


@pytest.mark.parametrize("bad", [-1.0, -1e-12, math.inf, math.nan])
def test_gamma_domain_errors(bad):
    with pytest.raises(ValueError):
        gamma(bad)


@given(st.floats(min_value=1e-6, max_value=1e12))
def test_db_round_trip(x):
    assert db_to_linear(linear_to_db(x)) == pytest.approx(x, rel=1e-12)


def test_linear_to_db_edge_cases():
    assert linear_to_db(0.0) == -math.inf
    with pytest.raises(ValueError):
        linear_to_db(-1.0)


@given(
    st.floats(min_value=0.0, max_value=1e9),
    st.floats(min_value=0.0, max_value=1e9),
)
def test_gamma_monotone_and_midpoint_concave(x, y):
    lo, hi = min(x, y), max(x, y)
    assert gamma(lo) <= gamma(hi) + 1e-12
    mid = gamma((lo + hi) / 2.0)
    assert mid >= (gamma(lo) + gamma(hi)) / 2.0 - 1e-12


class TestChannelParams:
    def test_from_db(self):
        p = ChannelParams.from_db(25.0, 25.0, 30.0, 2.0)
        assert p.snr1 == pytest.approx(316.22776601683793, rel=1e-14)
        assert p.inr2 == pytest.approx(1000.0, rel=1e-14)
        assert p.r0 == 2.0

    def test_from_physical(self):
        p = ChannelParams.from_physical(p1=4.0, p2=9.0, h11=2.0, h22=1.0, h21=3.0, noise=2.0, r0=1.0)
        assert p.snr1 == pytest.approx(8.0)
        assert p.snr2 == pytest.approx(4.5)
        assert p.inr2 == pytest.approx(40.5)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(snr1=-1.0, snr2=1.0, inr2=1.0, r0=0.0),
            dict(snr1=1.0, snr2=math.inf, inr2=1.0, r0=0.0),
            dict(snr1=1.0, snr2=1.0, inr2=math.nan, r0=0.0),
            dict(snr1=1.0, snr2=1.0, inr2=1.0, r0=-0.5),
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            ChannelParams(**kwargs)

    def test_scaled(self):
        p = ChannelParams(10.0, 20.0, 5.0, 1.0).scaled(10.0)
        assert (p.snr1, p.snr2, p.inr2, p.r0) == (100.0, 200.0, 50.0, 1.0)


class TestClassifyType1:
    def test_fig4_strong_with_two_relay_bits(self):
        p = ChannelParams.from_db(25.0, 25.0, 30.0, 2.0)
        regime = classify_type1(p)
        assert regime.label is RegimeLabel.STRONG
        assert regime.thresholds["INR2_star"] == pytest.approx(5972.363204735267, rel=1e-12)

    def test_fig4_very_strong_with_four_relay_bits(self):
        p = ChannelParams.from_db(25.0, 25.0, 30.0, 4.0)
        assert classify_type1(p).label is RegimeLabel.VERY_STRONG
        assert inr2_star(p) == pytest.approx(75.87166965516861, rel=1e-12)

    def test_no_relay_threshold_reduces_to_classical(self):
        p = ChannelParams(31.0, 17.0, 5.0, 0.0)
        assert inr2_star(p) == pytest.approx(p.snr2 * (1.0 + p.snr1), rel=1e-14)
        assert inr2_star(p) == pytest.approx(inr2_section(p), rel=1e-14)

    def test_star_clamps_at_zero(self):
        # relay rate so large that common decoding is free: threshold floor is 0
        p = ChannelParams(10.0, 10.0, 1.0, 10.0)
        assert inr2_star(p) == 0.0
        assert classify_type1(p).label is RegimeLabel.VERY_STRONG

    def test_boundary_tie_is_stronger_regime(self):
        p = ChannelParams(10.0, 10.0, 1.0, 1.0)
        star = inr2_star(p)
        at_star = ChannelParams(p.snr1, p.snr2, star, p.r0)
        assert classify_type1(at_star).label is RegimeLabel.VERY_STRONG
        at_snr2 = ChannelParams(p.snr1, 5.0, 5.0, 0.2)
        if inr2_star(at_snr2) > 5.0:
            assert classify_type1(at_snr2).label is RegimeLabel.STRONG


class TestClassifyType2:
    def test_fig6_very_strong_with_two_relay_bits(self):
        p = ChannelParams.from_db(20.0, 20.0, 55.0, 2.0)
        regime = classify_type2(p)
        assert regime.label is RegimeLabel.VERY_STRONG
        assert regime.thresholds["INR2_dagger"] == pytest.approx(1615.0, rel=1e-12)
        assert regime.thresholds["INR2_ddagger"] == pytest.approx(163115.0, rel=1e-12)

    def test_fig6_strong_with_four_relay_bits(self):
        p = ChannelParams.from_db(20.0, 20.0, 55.0, 4.0)
        assert classify_type2(p).label is RegimeLabel.STRONG
        assert inr2_dagger(p) == pytest.approx(25855.0, rel=1e-12)
        assert inr2_ddagger(p) == pytest.approx(2611355.0, rel=1e-12)

    def test_no_relay_dagger_reduces_to_snr2(self):
        p = ChannelParams(3.0, 7.0, 1.0, 0.0)
        assert inr2_dagger(p) == pytest.approx(p.snr2, rel=1e-14)

    def test_boundary_ties_go_to_stronger_regime(self):
        p = ChannelParams(10.0, 10.0, 10.0, 1.0)
        assert classify_type2(p).label is RegimeLabel.MODERATELY_STRONG
        at_dagger = ChannelParams(10.0, 10.0, inr2_dagger(p), 1.0)
        assert classify_type2(at_dagger).label is RegimeLabel.STRONG
        at_ddagger = ChannelParams(10.0, 10.0, inr2_ddagger(p), 1.0)
        assert classify_type2(at_ddagger).label is RegimeLabel.VERY_STRONG


@given(
    st.floats(min_value=0.01, max_value=1e6),
    st.floats(min_value=0.01, max_value=1e6),
    st.floats(min_value=0.0, max_value=6.0),
)
def test_ddagger_dominates_dagger(snr1, snr2, r0):
    p = ChannelParams(snr1, snr2, 1.0, r0)
    assert inr2_ddagger(p) >= inr2_dagger(p)


_ORDER = {
    RegimeLabel.WEAK: 0,
    RegimeLabel.MODERATELY_STRONG: 1,
    RegimeLabel.STRONG: 2,
    RegimeLabel.VERY_STRONG: 3,
}


@given(
    st.floats(min_value=0.1, max_value=1e4),
    st.floats(min_value=0.1, max_value=1e4),
    st.floats(min_value=0.0, max_value=4.0),
    st.floats(min_value=0.0, max_value=1e7),
    st.floats(min_value=0.0, max_value=1e7),
)
def test_labels_monotone_in_interference(snr1, snr2, r0, inr_a, inr_b):
    lo, hi = min(inr_a, inr_b), max(inr_a, inr_b)
    for classify in (classify_type1, classify_type2):
        l_lo = classify(ChannelParams(snr1, snr2, lo, r0)).label
        l_hi = classify(ChannelParams(snr1, snr2, hi, r0)).label
        assert _ORDER[l_lo] <= _ORDER[l_hi]
