import dataclasses

import pytest

from nrlsim.errors import ConfigError
from nrlsim.profiles import DeviceProfile, named_profile, sweep_variants


def test_named_profiles_knob_values():
    low = named_profile("NR-L-Low")
    assert (low.bandwidth_mhz, low.max_mcs_index, low.num_antenna_elements, low.max_tx_power_dbm) == (50.0, 9, 1, 13.0)
    mid = named_profile("NR-L-Mid")
    assert (mid.bandwidth_mhz, mid.max_mcs_index, mid.num_antenna_elements, mid.max_tx_power_dbm) == (50.0, 9, 4, 18.0)
    nr = named_profile("NR")
    assert (nr.bandwidth_mhz, nr.max_mcs_index, nr.num_antenna_elements, nr.max_tx_power_dbm) == (200.0, 28, 16, 23.0)


@pytest.mark.parametrize("alias,canonical", [
    ("nrllow", "NR-L-Low"),
    ("NrLMid", "NR-L-Mid"),
    ("nr-release-15", "NR"),
    ("NRRELEASE15", "NR"),
    (" nr ", "NR"),
])
def test_profile_aliases(alias, canonical):
    assert named_profile(alias) == named_profile(canonical)


def test_unknown_profile_rejected():
    with pytest.raises(ConfigError):
        named_profile("nr-heavy")


@pytest.mark.parametrize("kwargs", [
    dict(bandwidth_mhz=0.0),
    dict(bandwidth_mhz=-50.0),
    dict(max_mcs_index=29),
    dict(max_mcs_index=-1),
    dict(num_antenna_elements=0),
])
def test_invalid_knobs_rejected(kwargs):
    base = dict(bandwidth_mhz=50.0, max_mcs_index=9, num_antenna_elements=1,
                max_tx_power_dbm=13.0, label="x")
    with pytest.raises(ConfigError):
        DeviceProfile(**{**base, **kwargs})


def test_off_grid_values_warn_but_build():
    with pytest.warns(UserWarning):
        p = DeviceProfile(75.0, 9, 1, 13.0, label="odd")
    assert p.bandwidth_mhz == 75.0


def test_dict_round_trip():
    p = named_profile("NR-L-Mid")
    assert DeviceProfile.from_dict(p.to_dict()) == p


def test_sweep_covers_eight_single_knob_changes():
    base = named_profile("NR-L-Low")
    sweep = sweep_variants(base)
    assert len(sweep) == 8
    for p in sweep:
        diffs = [
            k for k in ("bandwidth_mhz", "max_mcs_index", "num_antenna_elements", "max_tx_power_dbm")
            if getattr(p, k) != getattr(base, k)
        ]
        assert len(diffs) == 1, p.label


def test_sweep_order_and_values():
    sweep = sweep_variants(named_profile("NR-L-Low"))
    assert sweep[0].bandwidth_mhz == 100.0
    assert sweep[1].bandwidth_mhz == 200.0
    assert sweep[2].max_mcs_index == 16
    assert sweep[3].max_mcs_index == 28
    assert sweep[4].num_antenna_elements == 4
    assert sweep[5].num_antenna_elements == 16
    assert sweep[5].bandwidth_mhz == 50.0  # only one knob moves
    assert sweep[6].max_tx_power_dbm == 18.0
    assert sweep[7].max_tx_power_dbm == 23.0
    assert len({p.label for p in sweep}) == 8


def test_sweep_requires_the_low_baseline():
    with pytest.raises(ConfigError):
        sweep_variants(named_profile("NR"))
