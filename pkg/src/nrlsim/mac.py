"""Slot clock, per-device RLC queues, TDMA round robin and HARQ bookkeeping.

One device owns the full band per slot. HARQ retransmissions due in a slot
preempt new transmissions; otherwise a round-robin pointer walks over the
devices that are backlogged and past their grant delay.
"""

from collections import deque
from dataclasses import dataclass, field

from .errors import ConfigError, SimulationError


@dataclass(frozen=True)
class SlotClock:
    scs_khz: int = 120

    @property
    def slot_duration_s(self) -> float:
        # numerology slots: 1 ms / 2^mu, with scs = 15 * 2^mu kHz
        if self.scs_khz % 15 != 0:
            raise ConfigError(f"unsupported subcarrier spacing {self.scs_khz} kHz")
        return 1e-3 * 15 / self.scs_khz


@dataclass(frozen=True)
class MacConfig:
    grant_latency_slots: int = 4
    max_harq_attempts: int = 4
    harq_retx_delay_slots: int = 8
    queue_capacity_bytes: int = 1_000_000

    def __post_init__(self):
        if self.max_harq_attempts < 1:
            raise ConfigError("max_harq_attempts must be >= 1")
        if self.grant_latency_slots < 0 or self.harq_retx_delay_slots < 0:
            raise ConfigError("slot delays must be non-negative")


@dataclass
class Segment:
    """A packet's byte span carried inside one transport block."""

    packet: object
    bits: int
    is_final: bool


@dataclass
class TransportBlock:
    ue_id: int
    mcs_index: int
    size_bits: int
    slot_index: int
    harq_attempt: int = 1
    segments: list[Segment] = field(default_factory=list)


class UeQueue:
    """Byte-accounting FIFO of packet remainders, drop-tail on overflow."""

    __slots__ = ("capacity_bits", "backlog_bits", "_fifo")

    def __init__(self, capacity_bytes: int):
        self.capacity_bits = capacity_bytes * 8
        self.backlog_bits = 0
        self._fifo: deque = deque()

    def enqueue(self, packet, size_bits: int) -> bool:
        """Append a packet; False (dropped) if it would overflow the queue."""
        if self.backlog_bits + size_bits > self.capacity_bits:
            return False
        self._fifo.append([packet, size_bits])
        self.backlog_bits += size_bits
        return True

    def serve(self, capacity_bits: int) -> list[Segment]:
        """Dequeue up to capacity_bits, segmenting the head packet if needed."""
        segments: list[Segment] = []
        remaining = capacity_bits
        while remaining > 0 and self._fifo:
            head = self._fifo[0]
            take = min(head[1], remaining)
            head[1] -= take
            remaining -= take
            self.backlog_bits -= take
            final = head[1] == 0
            if final:
                self._fifo.popleft()
            segments.append(Segment(packet=head[0], bits=take, is_final=final))
        return segments

    def __len__(self) -> int:
        return len(self._fifo)


def schedule_slot(
    slot_index: int,
    rr_pointer: int,
    eligible: list[int],
    harq_due: list[int],
) -> tuple[int | None, int]:
    """Pick the device that owns this slot.

    Returns (ue_id or None, new rr_pointer). `eligible` holds device ids that
    are backlogged and granted; `harq_due` holds ids with a retransmission due
    (served in the given order, absolute priority).
    """
    if harq_due:
        return harq_due[0], rr_pointer
    if not eligible:
        return None, rr_pointer
    ordered = sorted(eligible)
    for ue in ordered:
        if ue > rr_pointer:
            return ue, ue
    ue = ordered[0]  # wrap around
    return ue, ue


def harq_feedback(
    tb: TransportBlock, failed: bool, slot_index: int, cfg: MacConfig
) -> tuple[str, int | None]:
    """Classify the outcome of a transport block.

    Returns ("deliver", None), ("retx", due_slot) or ("drop", None).
    """
    if tb.harq_attempt > cfg.max_harq_attempts:
        raise SimulationError("transport block exceeded its HARQ budget")
    if not failed:
        return "deliver", None
    if tb.harq_attempt < cfg.max_harq_attempts:
        return "retx", slot_index + cfg.harq_retx_delay_slots
    return "drop", None
