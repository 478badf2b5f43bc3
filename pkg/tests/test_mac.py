import pytest
from hypothesis import given, strategies as st

from nrlsim.errors import ConfigError, SimulationError
from nrlsim.mac import (
    MacConfig,
    SlotClock,
    TransportBlock,
    UeQueue,
    harq_feedback,
    schedule_slot,
)


def test_slot_clock():
    assert SlotClock().slot_duration_s == pytest.approx(0.125e-3)
    assert SlotClock(scs_khz=15).slot_duration_s == pytest.approx(1e-3)
    with pytest.raises(ConfigError):
        SlotClock(scs_khz=100).slot_duration_s


def test_mac_config_validation():
    with pytest.raises(ConfigError):
        MacConfig(max_harq_attempts=0)
    with pytest.raises(ConfigError):
        MacConfig(grant_latency_slots=-1)


def test_queue_segmentation_across_blocks():
    q = UeQueue(capacity_bytes=10_000)
    assert q.enqueue("p0", 6000)
    segs = q.serve(4000)
    assert [(s.packet, s.bits, s.is_final) for s in segs] == [("p0", 4000, False)]
    segs = q.serve(4000)
    assert [(s.packet, s.bits, s.is_final) for s in segs] == [("p0", 2000, True)]
    assert q.backlog_bits == 0 and len(q) == 0


def test_queue_packs_multiple_packets_per_block():
    q = UeQueue(capacity_bytes=10_000)
    for i in range(3):
        q.enqueue(i, 1000)
    segs = q.serve(2500)
    assert [(s.packet, s.bits, s.is_final) for s in segs] == [
        (0, 1000, True), (1, 1000, True), (2, 500, False)
    ]
    assert q.backlog_bits == 500


def test_queue_drop_tail_overflow():
    q = UeQueue(capacity_bytes=1000)  # 8000 bits
    assert q.enqueue("a", 6000)
    assert not q.enqueue("b", 4000)
    assert q.backlog_bits == 6000


def test_round_robin_cycles_in_id_order():
    ptr = -1
    served = []
    for slot in range(6):
        ue, ptr = schedule_slot(slot, ptr, eligible=[0, 1, 2], harq_due=[])
        served.append(ue)
    assert served == [0, 1, 2, 0, 1, 2]


def test_round_robin_skips_ineligible_and_wraps():
    ue, ptr = schedule_slot(0, 1, eligible=[0, 3], harq_due=[])
    assert (ue, ptr) == (3, 3)
    ue, ptr = schedule_slot(1, ptr, eligible=[0, 3], harq_due=[])
    assert (ue, ptr) == (0, 0)


def test_harq_preempts_round_robin():
    ue, ptr = schedule_slot(0, -1, eligible=[0, 1], harq_due=[5])
    assert ue == 5 and ptr == -1  # pointer untouched by retransmissions


def test_idle_slot():
    assert schedule_slot(0, -1, eligible=[], harq_due=[]) == (None, -1)


def _reference_rr(eligibility, n_ues):
    """Brute-force round robin: enumerate ids cyclically after the last served."""
    last = n_ues - 1  # so the first scan starts at id 0
    out = []
    for eligible in eligibility:
        pick = None
        for step in range(1, n_ues + 1):
            cand = (last + step) % n_ues
            if cand in eligible:
                pick = cand
                break
        out.append(pick)
        if pick is not None:
            last = pick
    return out


@given(st.lists(st.sets(st.integers(0, 2)), min_size=30, max_size=30))
def test_round_robin_matches_brute_force(eligibility):
    expected = _reference_rr(eligibility, 3)
    ptr, got = -1, []
    for slot, eligible in enumerate(eligibility):
        ue, ptr = schedule_slot(slot, ptr, sorted(eligible), harq_due=[])
        got.append(ue)
    assert got == expected


@given(st.lists(st.sets(st.integers(0, 4)), min_size=50, max_size=50))
def test_round_robin_fairness_under_full_backlog(eligibility):
    # when everyone is always eligible, service counts differ by at most one
    ptr, counts = -1, [0] * 5
    for slot in range(50):
        ue, ptr = schedule_slot(slot, ptr, [0, 1, 2, 3, 4], harq_due=[])
        counts[ue] += 1
    assert max(counts) - min(counts) <= 1


def _tb(attempt):
    return TransportBlock(ue_id=0, mcs_index=9, size_bits=6111, slot_index=10,
                          harq_attempt=attempt)


def test_harq_feedback_outcomes():
    cfg = MacConfig()
    assert harq_feedback(_tb(1), failed=False, slot_index=10, cfg=cfg) == ("deliver", None)
    assert harq_feedback(_tb(1), failed=True, slot_index=10, cfg=cfg) == ("retx", 18)
    assert harq_feedback(_tb(4), failed=True, slot_index=40, cfg=cfg) == ("drop", None)
    with pytest.raises(SimulationError):
        harq_feedback(_tb(5), failed=True, slot_index=50, cfg=cfg)


@given(st.lists(st.integers(1, 8000), min_size=1, max_size=40),
       st.integers(1, 20000))
def test_queue_conserves_bits(sizes, capacity):
    q = UeQueue(capacity_bytes=1_000_000)
    for i, size in enumerate(sizes):
        assert q.enqueue(i, size)
    drained = 0
    while q.backlog_bits:
        drained += sum(s.bits for s in q.serve(capacity))
    assert drained == sum(sizes)
