import numpy as np

from nrlsim import rng


def test_same_key_yields_identical_stream():
    a = rng.substream(1, 0, rng.LINK).random(16)
    b = rng.substream(1, 0, rng.LINK).random(16)
    np.testing.assert_array_equal(a, b)


def test_streams_are_separated_by_every_key_component():
    base = rng.substream(1, 0, rng.LINK, 0).random(8)
    for other in (
        rng.substream(2, 0, rng.LINK, 0),
        rng.substream(1, 1, rng.LINK, 0),
        rng.substream(1, 0, rng.FADING, 0),
        rng.substream(1, 0, rng.LINK, 1),
    ):
        assert not np.array_equal(base, other.random(8))


def test_stream_codes_are_distinct():
    codes = list(rng.STREAM_NAMES.values())
    assert len(codes) == len(set(codes))
    assert set(codes) == {rng.PLACEMENT, rng.ROLES, rng.LINK, rng.FADING, rng.BLER, rng.TRAFFIC}
