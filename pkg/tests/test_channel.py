import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import nrlsim.channel as ch
from nrlsim import rng
from nrlsim.errors import ConfigError

PARAMS = ch.ChannelParams()


# Hand-computed large-scale pathloss values at fc = 28 GHz.
@pytest.mark.parametrize("d3d,is_los,variant,expected", [
    (10.0, True, "sh", 80.83600259550217),   # 31.84 + 21.5 + 19 log10(28)
    (10.0, True, "dh", 80.83600259550217),   # same LOS curve for both variants
    (10.0, False, "sh", 84.34316062684438),  # 32.40 + 23.0 + 20 log10(28)
    (10.0, False, "dh", 84.47316062684439),  # 33.63 + 21.9 + 20 log10(28)
    (1.0, True, "sh", 59.336002595502165),
])
def test_pathloss_oracles(d3d, is_los, variant, expected):
    assert ch.pathloss_db(d3d, 28.0, is_los, variant, PARAMS) == pytest.approx(expected, abs=0.01)


def test_distance_clamped_below_one_meter():
    assert ch.pathloss_db(0.2, 28.0, True, "sh", PARAMS) == ch.pathloss_db(1.0, 28.0, True, "sh", PARAMS)


def test_nlos_never_beats_los():
    # synthetic coefficients that would otherwise put NLOS below LOS
    params = ch.ChannelParams(sh=ch.VariantParams(pl_nlos=(10.0, 10.0, 10.0)))
    nlos = ch.pathloss_db(5.0, 28.0, False, "sh", params)
    los = ch.pathloss_db(5.0, 28.0, True, "sh", params)
    assert nlos == los


def test_los_probability_oracles():
    # k = -d_clutter/ln(1-r) * (h_bs - h_ut)/(h_c - h_ut), heights 3/1.5/2
    assert ch.los_probability(10.0, "sh", PARAMS) == pytest.approx(0.9283177667225558, abs=1e-9)
    assert ch.los_probability(10.0, "dh", PARAMS) == pytest.approx(0.21715340932759256, abs=1e-9)
    assert ch.los_probability(0.0, "dh", PARAMS) == 1.0


def test_los_probability_requires_clutter_above_device():
    with pytest.raises(ConfigError):
        ch.los_probability(5.0, "sh", PARAMS, bs_height_m=3.0, ue_height_m=2.5)


def test_unknown_variant_rejected():
    with pytest.raises(ConfigError):
        PARAMS.for_variant("indoor")


def test_realize_link_is_deterministic():
    bs, ue = (10.0, 10.0, 3.0), (2.0, 15.0, 1.5)
    a = ch.realize_link(bs, ue, "dh", PARAMS, rng.substream(1, 0, rng.LINK))
    b = ch.realize_link(bs, ue, "dh", PARAMS, rng.substream(1, 0, rng.LINK))
    assert a == b
    assert a.distance_3d_m == pytest.approx(math.sqrt(8.0**2 + 5.0**2 + 1.5**2))


def test_realized_los_rate_matches_probability():
    bs, ue = (10.0, 10.0, 3.0), (4.0, 10.0, 1.5)  # d2d = 6
    p = ch.los_probability(6.0, "dh", PARAMS)
    gen = rng.substream(7, 0, rng.LINK)
    hits = sum(ch.realize_link(bs, ue, "dh", PARAMS, gen).is_los for _ in range(20_000))
    assert hits / 20_000 == pytest.approx(p, abs=0.01)


def test_shadow_standard_deviation_per_state():
    bs = (10.0, 10.0, 3.0)
    gen = rng.substream(11, 0, rng.LINK)
    los_sh, nlos_sh = [], []
    for _ in range(20_000):
        link = ch.realize_link(bs, (6.0, 10.0, 1.5), "dh", PARAMS, gen)
        (los_sh if link.is_los else nlos_sh).append(link.shadow_db)
    assert np.std(los_sh) == pytest.approx(4.3, abs=0.15)
    assert np.std(nlos_sh) == pytest.approx(4.0, abs=0.15)
    assert np.mean(los_sh + nlos_sh) == pytest.approx(0.0, abs=0.15)


def test_dense_clutter_attenuates_more_on_average():
    gen = np.random.Generator(np.random.PCG64(123))
    bs = (10.0, 10.0, 3.0)
    totals = {"sh": 0.0, "dh": 0.0}
    n = 10_000
    points = gen.uniform(0.0, 20.0, size=(n, 2))
    for variant in ("sh", "dh"):
        vgen = np.random.Generator(np.random.PCG64(45))
        for x, y in points:
            link = ch.realize_link(bs, (x, y, 1.5), variant, PARAMS, vgen)
            totals[variant] += link.pathloss_db + link.shadow_db
    assert totals["dh"] / n > totals["sh"] / n


def test_fast_fading_moments():
    gen = rng.substream(3, 0, rng.FADING)
    draws = np.array([ch.instantaneous_offset_db(gen, 3.0) for _ in range(100_000)])
    assert draws.mean() == pytest.approx(0.0, abs=0.05)
    assert draws.std() == pytest.approx(3.0, abs=0.05)
    assert ch.instantaneous_offset_db(gen, 0.0) == 0.0


@given(
    d=st.floats(1.0, 200.0),
    fc=st.floats(1.0, 100.0),
    variant=st.sampled_from(["sh", "dh"]),
)
def test_pathloss_nlos_lower_bound_property(d, fc, variant):
    los = ch.pathloss_db(d, fc, True, variant, PARAMS)
    nlos = ch.pathloss_db(d, fc, False, variant, PARAMS)
    assert nlos >= los


@given(d1=st.floats(0.0, 100.0), d2=st.floats(0.0, 100.0))
def test_los_probability_decreases_with_distance(d1, d2):
    lo, hi = sorted((d1, d2))
    assert ch.los_probability(hi, "dh", PARAMS) <= ch.los_probability(lo, "dh", PARAMS)
