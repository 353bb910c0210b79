import math

import pytest
from hypothesis import given, strategies as st

from briskrl import Rng

from oracles import splitmix64_doubles, splitmix64_stream

# First 16 raw outputs for three seeds, frozen from the reference recurrence.
GOLDEN_RAW = {
    0: [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F, 0xF88BB8A8724C81EC,
        0x1B39896A51A8749B, 0x53CB9F0C747EA2EA, 0x2C829ABE1F4532E1, 0xC584133AC916AB3C,
        0x3EE5789041C98AC3, 0xF3B8488C368CB0A6, 0x657EECDD3CB13D09, 0xC2D326E0055BDEF6,
        0x8621A03FE0BBDB7B, 0x8E1F7555983AA92F, 0xB54E0F1600CC4D19, 0x84BB3F97971D80AB,
    ],
    1: [
        0x910A2DEC89025CC1, 0xBEEB8DA1658EEC67, 0xF893A2EEFB32555E, 0x71C18690EE42C90B,
        0x71BB54D8D101B5B9, 0xC34D0BFF90150280, 0xE099EC6CD7363CA5, 0x85E7BB0F12278575,
        0x491718DE357E3DA8, 0xCB435C8E74616796, 0x6775DC7701564F61, 0x9AFCD44D14CF8BFE,
        0x7476CF8A4BAA5DC0, 0x87B341D690D7A28A, 0x6F9B6DAE6F4C57A8, 0x2AC2CE17A5794A3B,
    ],
    42: [
        0xBDD732262FEB6E95, 0x28EFE333B266F103, 0x47526757130F9F52, 0x581CE1FF0E4AE394,
        0x09BC585A244823F2, 0xDE4431FA3C80DB06, 0x37E9671C45376D5D, 0xCCF635EE9E9E2FA4,
        0x5705B8770B3D7DD5, 0x9E54D738297F77AE, 0x3474724A775B19BF, 0x7E348A0E451650BE,
        0x836DED897F3E46E6, 0x851F977347ED6DB7, 0xAA47E31C02E78EDC, 0x341452C54D7C33F2,
    ],
}

GOLDEN_DOUBLES = {
    0: [0.8833108082136426, 0.43152799704850997, 0.026433771592597743, 0.9708819781538285],
    1: [0.5665615751722809, 0.7457817572627011, 0.9710027535867962, 0.4443592170557721],
}


@pytest.mark.parametrize("seed", sorted(GOLDEN_RAW))
def test_raw_stream_matches_reference_vector(seed):
    rng = Rng(seed)
    assert [rng.next_raw() for _ in range(16)] == GOLDEN_RAW[seed]


@pytest.mark.parametrize("seed", sorted(GOLDEN_DOUBLES))
def test_double_stream_golden(seed):
    rng = Rng(seed)
    assert [rng.random() for _ in range(4)] == GOLDEN_DOUBLES[seed]


def test_seed_seven_first_double():
    assert Rng(7).random() == 0.3898297483912715


def test_matches_independent_implementation_on_many_seeds():
    for seed in (3, 123456789, 2**63, 2**64 - 1, 0xDEADBEEF):
        rng = Rng(seed)
        assert [rng.next_raw() for _ in range(50)] == splitmix64_stream(seed, 50)
    rng = Rng(99)
    assert [rng.random() for _ in range(50)] == splitmix64_doubles(99, 50)


def test_same_seed_same_sequence():
    a, b = Rng(1234), Rng(1234)
    assert [a.next_raw() for _ in range(100)] == [b.next_raw() for _ in range(100)]


def test_state_property_tracks_advancement():
    rng = Rng(5)
    assert rng.state == 5
    rng.next_raw()
    assert rng.state == (5 + 0x9E3779B97F4A7C15) & (2**64 - 1)
    # a new Rng seeded with the recorded state continues the stream
    resumed = Rng(rng.state)
    assert resumed.next_raw() == rng.next_raw()


def test_seed_is_masked_to_64_bits():
    assert Rng(2**64 + 5).next_raw() == Rng(5).next_raw()
    assert Rng(-1).state == 2**64 - 1


def test_random_unit_interval():
    rng = Rng(2024)
    for _ in range(10000):
        v = rng.random()
        assert 0.0 <= v < 1.0


@given(
    lo=st.floats(-1e12, 1e12),
    hi=st.floats(-1e12, 1e12),
    seed=st.integers(0, 2**32),
)
def test_uniform_stays_in_half_open_interval(lo, hi, seed):
    if lo > hi:
        lo, hi = hi, lo
    v = Rng(seed).uniform(lo, hi)
    if lo == hi:
        assert v == lo
    else:
        assert lo <= v < hi


def test_uniform_rejects_bad_bounds():
    rng = Rng(0)
    with pytest.raises(ValueError):
        rng.uniform(1.0, 0.0)
    with pytest.raises(ValueError):
        rng.uniform(0.0, math.inf)
    with pytest.raises(ValueError):
        rng.uniform(math.nan, 1.0)


def test_uniform_replays_the_double_stream():
    # uniform is exactly lo + (hi - lo) * random()
    draws = Rng(77)
    raw = Rng(77)
    for _ in range(100):
        u = raw.random()
        assert draws.uniform(-3.0, 5.0) == -3.0 + 8.0 * u


def test_randint_range_and_counts():
    rng = Rng(42)
    counts = [0, 0]
    for _ in range(10000):
        counts[rng.randint(2)] += 1
    assert counts == [4978, 5022]  # frozen; also a ~50/50 sanity check


def test_randint_validation():
    with pytest.raises(ValueError):
        Rng(0).randint(0)
    with pytest.raises(ValueError):
        Rng(0).randint(-3)


def test_split_derives_child_from_next_raw():
    parent = Rng(11)
    probe = Rng(11)
    child = parent.split()
    expected_child_seed = probe.next_raw()
    assert [child.next_raw() for _ in range(10)] == splitmix64_stream(expected_child_seed, 10)
    # parent stream continues past the split draw
    assert parent.next_raw() == probe.next_raw()
