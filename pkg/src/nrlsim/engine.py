"""Deterministic slot-level event loop and campaign metrics.

A run simulates one (scenario, profile, drop) triple. Channel, fading and
traffic realizations depend only on (seed, drop), never on the profile, so
sweep configurations are compared on paired drops.

Per-slot small-scale fading, the AMC's exponentially averaged SINR, the MCS
choice and block-error uniforms are all precomputed as arrays; the Python
loop only moves queues, the round-robin pointer and HARQ state.
"""

import csv
import dataclasses
import heapq
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.signal import lfilter

from . import channel as ch
from . import phy, rng, traffic
from .config import SimConfig, config_digest
from .errors import ConfigError, SimulationError
from .mac import TransportBlock, UeQueue, harq_feedback, schedule_slot
from .profiles import DeviceProfile
from .scenario import DATA, VIDEO, Drop, Scenario, build_drop

WARMUP_S = 0.5    # transient excluded from metrics
COOLDOWN_S = 0.5  # tail excluded so in-flight packets don't bias PRR

_NEVER = 1 << 60


@dataclass(frozen=True)
class RunResult:
    label: str
    variant: str
    drop_index: int
    throughput_video_bps: float
    throughput_data_bps: float
    latency_video_ms: float | None
    latency_data_ms: float | None
    deadline_video: float | None
    deadline_data: float | None
    prr_video: float | None
    prr_data: float | None
    sinr_db: float | None
    power_video_mw: float
    power_data_mw: float
    power_overall_mw: float
    # pooled-statistic ingredients
    generated_video: int
    generated_data: int
    delivered_video: int
    delivered_data: int
    within_video: int
    within_data: int
    latency_sum_video_s: float
    latency_sum_data_s: float
    offered_video_bps: float
    offered_data_bps: float
    energy_total_mj: float


@dataclass(frozen=True)
class MetricsRecord:
    label: str
    variant: str
    num_drops: int
    throughput_video_bps: float
    throughput_data_bps: float
    latency_video_ms: float | None
    latency_data_ms: float | None
    deadline_video: float | None
    deadline_data: float | None
    prr_video: float
    prr_data: float
    sinr_db: float | None
    power_video_mw: float
    power_data_mw: float
    power_overall_mw: float
    generated_video: int
    generated_data: int
    hw_throughput_video_bps: float | None = None
    hw_latency_data_ms: float | None = None
    hw_prr_video: float | None = None
    hw_prr_data: float | None = None
    hw_sinr_db: float | None = None
    hw_power_video_mw: float | None = None
    hw_power_data_mw: float | None = None


def _measure_window(duration_s: float) -> tuple[float, float]:
    if duration_s > 4.0 * (WARMUP_S + COOLDOWN_S):
        return WARMUP_S, duration_s - COOLDOWN_S
    return 0.0, duration_s


def _generate_packets(
    drop: Drop, cfg: SimConfig, scenario: Scenario, drop_index: int
) -> tuple[list, list, list, list]:
    """Returns parallel per-packet lists: ue, size_bits, created_s, role."""
    src = cfg.traffic
    ue_ids: list[int] = []
    sizes: list[int] = []
    times: list[float] = []
    roles: list[str] = []
    for ue, role in enumerate(drop.ue_roles):
        if role == VIDEO:
            events = traffic.cbr_arrivals(
                src.video_rate_bps, src.packet_bytes, scenario.sim_duration_s
            )
        else:
            gen = rng.substream(scenario.seed, drop_index, rng.TRAFFIC, ue)
            events = traffic.ftp_poisson_arrivals(
                src.data_mean_rate_bps,
                src.ftp_file_bytes,
                src.packet_bytes,
                scenario.sim_duration_s,
                gen,
            )
        for t, size in events:
            ue_ids.append(ue)
            sizes.append(size * 8)
            times.append(t)
            roles.append(role)
    order = sorted(range(len(times)), key=lambda i: (times[i], ue_ids[i]))
    return (
        [ue_ids[i] for i in order],
        [sizes[i] for i in order],
        [times[i] for i in order],
        [roles[i] for i in order],
    )


def run(
    cfg: SimConfig,
    profile: DeviceProfile,
    drop_index: int,
    variant: str | None = None,
    trace_path: str | Path | None = None,
    links_path: str | Path | None = None,
) -> RunResult:
    """Simulate one drop under one device profile."""
    scenario = cfg.scenario
    if variant is not None:
        scenario = dataclasses.replace(scenario, inf_variant=variant)
    scenario.validate()
    variant = scenario.inf_variant

    dt = cfg.clock.slot_duration_s
    num_slots = round(scenario.sim_duration_s / dt)
    n = scenario.num_devices
    seed = scenario.seed

    drop = build_drop(scenario, drop_index)
    link_gen = [rng.substream(seed, drop_index, rng.LINK, ue) for ue in range(n)]
    links = [
        ch.realize_link(
            scenario.bs_position, drop.ue_positions[ue], variant, cfg.channel,
            link_gen[ue], fc_ghz=scenario.carrier_ghz,
        )
        for ue in range(n)
    ]
    if links_path is not None:
        _dump_links(links_path, drop, links)

    table = phy.load_mcs_table(margin_db=cfg.phy.amc_margin_db)
    min_sinr = np.array([e.min_sinr_db for e in table])
    shannon = np.array([phy._shannon_db(e.spectral_efficiency) for e in table])
    num_prb = phy.prb_for_bandwidth(profile.bandwidth_mhz)
    tbs_by_mcs = np.array(
        [phy.transport_block_size_bits(num_prb, e, cfg.phy.re_per_prb) for e in table],
        dtype=np.int64,
    )
    mean_snr = np.array([phy.mean_snr_db(profile, links[ue], cfg.phy) for ue in range(n)])

    # Fading, filtered SINR, per-slot MCS and BLER uniforms, all up front.
    fade_gen = rng.substream(seed, drop_index, rng.FADING)
    sigma_ff = cfg.channel.fast_fading_std_db
    fading = fade_gen.normal(0.0, sigma_ff, size=(num_slots, n)) if sigma_ff > 0 else np.zeros((num_slots, n))
    alpha = cfg.phy.ema_alpha
    filt = lfilter([alpha], [1.0, -(1.0 - alpha)], fading, axis=0)
    filt_sinr = mean_snr[None, :] + filt
    inst_sinr = mean_snr[None, :] + fading
    # AMC choice per (slot, ue); devices below the lowest threshold still
    # transmit at index 0 (lowest-rate fallback keeps the MAC work-conserving).
    mcs_m = np.clip(
        np.searchsorted(min_sinr, filt_sinr, side="right") - 1, 0, profile.max_mcs_index
    ).astype(np.int16)
    tbs_m = tbs_by_mcs[mcs_m]
    bler_u = rng.substream(seed, drop_index, rng.BLER).random((num_slots, n))

    pkt_ue, pkt_bits, pkt_created, pkt_role = _generate_packets(drop, cfg, scenario, drop_index)
    n_pkts = len(pkt_ue)
    pkt_slot = [int(math.ceil(t / dt - 1e-9)) for t in pkt_created]
    pkt_delivered: list[float | None] = [None] * n_pkts
    pkt_pending = list(pkt_bits)  # undelivered bits per packet
    pkt_lost = [False] * n_pkts

    queues = [UeQueue(cfg.mac.queue_capacity_bytes) for _ in range(n)]
    elig_from = [_NEVER] * n
    grant = cfg.mac.grant_latency_slots
    retx_delay = cfg.mac.harq_retx_delay_slots
    max_harq = cfg.mac.max_harq_attempts
    beta = cfg.phy.bler_beta_db

    harq_heap: list = []
    seq = 0
    rr_pointer = -1
    active: set[int] = set()
    active_slots = [0] * n
    sinr_sum = [0.0] * n
    trace_rows = [] if trace_path is not None else None

    ap = 0  # arrival pointer
    log10 = math.log10
    exp = math.exp
    for t in range(num_slots):
        while ap < n_pkts and pkt_slot[ap] <= t:
            ue = pkt_ue[ap]
            q = queues[ue]
            was_empty = q.backlog_bits == 0
            if q.enqueue(ap, pkt_bits[ap]):
                if was_empty:
                    elig_from[ue] = t + grant
                active.add(ue)
            else:
                pkt_lost[ap] = True  # drop-tail overflow
            ap += 1

        harq_due = []
        if harq_heap and harq_heap[0][0] <= t:
            harq_due.append(harq_heap[0][2].ue_id)
        eligible = [ue for ue in active if elig_from[ue] <= t]
        ue_sel, rr_pointer = schedule_slot(t, rr_pointer, eligible, harq_due)
        if ue_sel is None:
            continue

        if harq_due:
            _, _, tb = heapq.heappop(harq_heap)
            tb.harq_attempt += 1
            tb.slot_index = t
        else:
            q = queues[ue_sel]
            mcs_idx = int(mcs_m[t, ue_sel])
            segments = q.serve(int(tbs_m[t, ue_sel]))
            if q.backlog_bits == 0:
                active.discard(ue_sel)
                elig_from[ue_sel] = _NEVER
            tb = TransportBlock(
                ue_id=ue_sel,
                mcs_index=mcs_idx,
                size_bits=sum(s.bits for s in segments),
                slot_index=t,
                segments=segments,
            )

        s_eff = inst_sinr[t, tb.ue_id] + 10.0 * log10(tb.harq_attempt) - shannon[tb.mcs_index]
        x = s_eff / beta
        if x > 50.0:
            p_fail = 0.0
        elif x < -50.0:
            p_fail = 1.0
        else:
            p_fail = 1.0 / (1.0 + exp(x))
        failed = bler_u[t, tb.ue_id] < p_fail

        action, due = harq_feedback(tb, failed, t, cfg.mac)
        if action == "deliver":
            t_done = (t + 1) * dt
            for seg in tb.segments:
                pid = seg.packet
                pkt_pending[pid] -= seg.bits
                if pkt_pending[pid] == 0 and not pkt_lost[pid]:
                    pkt_delivered[pid] = t_done
        elif action == "retx":
            seq += 1
            heapq.heappush(harq_heap, (due, seq, tb))
        else:  # drop after the last HARQ attempt
            for seg in tb.segments:
                pkt_lost[seg.packet] = True

        active_slots[tb.ue_id] += 1
        sinr_sum[tb.ue_id] += float(filt_sinr[t, tb.ue_id])
        if trace_rows is not None:
            trace_rows.append(
                (t, tb.ue_id, tb.mcs_index, tb.size_bits, tb.harq_attempt, action)
            )

    _audit(queues, pkt_pending, pkt_delivered, pkt_lost, n_pkts)
    if trace_path is not None:
        _dump_trace(trace_path, trace_rows)

    return _collect_metrics(
        cfg, profile, scenario, drop, drop_index,
        pkt_ue, pkt_bits, pkt_created, pkt_role, pkt_delivered, pkt_lost,
        active_slots, sinr_sum, num_slots, dt,
    )


def _audit(queues, pkt_pending, pkt_delivered, pkt_lost, n_pkts) -> None:
    """Byte conservation: generated = delivered + lost + still pending."""
    queued_bits = sum(q.backlog_bits for q in queues)
    open_bits = 0
    for pid in range(n_pkts):
        if pkt_delivered[pid] is None and not pkt_lost[pid]:
            open_bits += pkt_pending[pid]
        if pkt_delivered[pid] is not None and pkt_lost[pid]:
            raise SimulationError("packet both delivered and lost")
    if queued_bits > open_bits:
        raise SimulationError(
            f"queues hold {queued_bits} bits but only {open_bits} are unaccounted"
        )


def _collect_metrics(
    cfg, profile, scenario, drop, drop_index,
    pkt_ue, pkt_bits, pkt_created, pkt_role, pkt_delivered, pkt_lost,
    active_slots, sinr_sum, num_slots, dt,
) -> RunResult:
    from .energy import active_power_mw

    lo, hi = _measure_window(scenario.sim_duration_s)
    window = hi - lo

    stats = {
        VIDEO: dict(gen=0, dlv=0, within=0, bits=0, gen_bits=0, lat=0.0),
        DATA: dict(gen=0, dlv=0, within=0, bits=0, gen_bits=0, lat=0.0),
    }
    for pid in range(len(pkt_ue)):
        created = pkt_created[pid]
        if not lo <= created < hi:
            continue
        s = stats[pkt_role[pid]]
        s["gen"] += 1
        s["gen_bits"] += pkt_bits[pid]
        done = pkt_delivered[pid]
        if done is not None:
            lat = done - created
            s["dlv"] += 1
            s["bits"] += pkt_bits[pid]
            s["lat"] += lat
            if lat <= traffic.DEADLINE_S[pkt_role[pid]] + 1e-9:
                s["within"] += 1

    n_role = {VIDEO: drop.ue_roles.count(VIDEO), DATA: drop.ue_roles.count(DATA)}

    def thr(role):
        if n_role[role] == 0 or window <= 0:
            return 0.0
        return stats[role]["bits"] / window / n_role[role]

    def offered(role):
        if n_role[role] == 0 or window <= 0:
            return 0.0
        return stats[role]["gen_bits"] / window / n_role[role]

    def lat_ms(role):
        d = stats[role]["dlv"]
        return 1000.0 * stats[role]["lat"] / d if d else None

    def ratio(num_key, role):
        g = stats[role]["gen"]
        if g == 0:
            return None
        return stats[role][num_key] / g

    p_act = active_power_mw(profile, cfg.energy)
    p_idle = cfg.energy.p_idle_mw
    duration = num_slots * dt
    power = []
    energy_total = 0.0
    for ue in range(scenario.num_devices):
        t_active = active_slots[ue] * dt
        e_mj = t_active * p_act + (duration - t_active) * p_idle
        energy_total += e_mj
        power.append(e_mj / duration)

    def role_power(role):
        vals = [power[ue] for ue in range(len(power)) if drop.ue_roles[ue] == role]
        return sum(vals) / len(vals) if vals else 0.0

    sinr_vals = [
        sinr_sum[ue] / active_slots[ue]
        for ue in range(scenario.num_devices)
        if active_slots[ue] > 0
    ]
    sinr_db = sum(sinr_vals) / len(sinr_vals) if sinr_vals else None

    prr_v = ratio("dlv", VIDEO)
    prr_d = ratio("dlv", DATA)
    return RunResult(
        label=profile.label,
        variant=scenario.inf_variant,
        drop_index=drop_index,
        throughput_video_bps=thr(VIDEO),
        throughput_data_bps=thr(DATA),
        latency_video_ms=lat_ms(VIDEO),
        latency_data_ms=lat_ms(DATA),
        deadline_video=ratio("within", VIDEO),
        deadline_data=ratio("within", DATA),
        prr_video=prr_v,
        prr_data=prr_d,
        sinr_db=sinr_db,
        power_video_mw=role_power(VIDEO),
        power_data_mw=role_power(DATA),
        power_overall_mw=sum(power) / len(power) if power else 0.0,
        generated_video=stats[VIDEO]["gen"],
        generated_data=stats[DATA]["gen"],
        delivered_video=stats[VIDEO]["dlv"],
        delivered_data=stats[DATA]["dlv"],
        within_video=stats[VIDEO]["within"],
        within_data=stats[DATA]["within"],
        latency_sum_video_s=stats[VIDEO]["lat"],
        latency_sum_data_s=stats[DATA]["lat"],
        offered_video_bps=offered(VIDEO),
        offered_data_bps=offered(DATA),
        energy_total_mj=energy_total,
    )


def _mean(values) -> float | None:
    vals = [v for v in values if v is not None]
    return sum(vals) / len(vals) if vals else None


def _halfwidth(values) -> float | None:
    vals = [v for v in values if v is not None]
    if len(vals) < 2:
        return None
    m = sum(vals) / len(vals)
    var = sum((v - m) ** 2 for v in vals) / (len(vals) - 1)
    return 1.96 * math.sqrt(var / len(vals))


def aggregate(results: list[RunResult]) -> MetricsRecord:
    """Combine per-drop results for one (config, variant) cell.

    Per-drop scalars are averaged unweighted; latency, PRR and deadline
    ratios are pooled over packets.
    """
    if not results:
        raise ConfigError("cannot aggregate an empty result list")
    labels = {(r.label, r.variant) for r in results}
    if len(labels) > 1:
        raise ConfigError(f"mixed (label, variant) cells: {sorted(labels)}")

    def pooled(numer, denom):
        total = sum(denom)
        return sum(numer) / total if total else 1.0

    gen_v = [r.generated_video for r in results]
    gen_d = [r.generated_data for r in results]
    dlv_v = sum(r.delivered_video for r in results)
    dlv_d = sum(r.delivered_data for r in results)

    return MetricsRecord(
        label=results[0].label,
        variant=results[0].variant,
        num_drops=len(results),
        throughput_video_bps=_mean(r.throughput_video_bps for r in results) or 0.0,
        throughput_data_bps=_mean(r.throughput_data_bps for r in results) or 0.0,
        latency_video_ms=(
            1000.0 * sum(r.latency_sum_video_s for r in results) / dlv_v if dlv_v else None
        ),
        latency_data_ms=(
            1000.0 * sum(r.latency_sum_data_s for r in results) / dlv_d if dlv_d else None
        ),
        deadline_video=pooled([r.within_video for r in results], gen_v),
        deadline_data=pooled([r.within_data for r in results], gen_d),
        prr_video=pooled([r.delivered_video for r in results], gen_v),
        prr_data=pooled([r.delivered_data for r in results], gen_d),
        sinr_db=_mean(r.sinr_db for r in results),
        power_video_mw=_mean(r.power_video_mw for r in results) or 0.0,
        power_data_mw=_mean(r.power_data_mw for r in results) or 0.0,
        power_overall_mw=_mean(r.power_overall_mw for r in results) or 0.0,
        generated_video=sum(gen_v),
        generated_data=sum(gen_d),
        hw_throughput_video_bps=_halfwidth(r.throughput_video_bps for r in results),
        hw_latency_data_ms=_halfwidth(r.latency_data_ms for r in results),
        hw_prr_video=_halfwidth(r.prr_video for r in results),
        hw_prr_data=_halfwidth(r.prr_data for r in results),
        hw_sinr_db=_halfwidth(r.sinr_db for r in results),
        hw_power_video_mw=_halfwidth(r.power_video_mw for r in results),
        hw_power_data_mw=_halfwidth(r.power_data_mw for r in results),
    )


def deadline_ratio(packets: list[traffic.TrafficPacket], role: str) -> float | None:
    """Delivered-within-deadline over generated; None when nothing generated."""
    gen = [p for p in packets if p.role == role]
    if not gen:
        return None
    ok = sum(1 for p in gen if p.within_deadline)
    return ok / len(gen)


# --- campaign driver ---------------------------------------------------------

def _run_job(args):
    cfg, profile, variant, drop_index = args
    return run(cfg, profile, drop_index, variant=variant)


def campaign(
    cfg: SimConfig,
    profiles: list[DeviceProfile],
    variants: tuple[str, ...] = ("sh", "dh"),
    out_dir: str | Path | None = None,
    workers: int = 1,
) -> list[MetricsRecord]:
    """Run every (profile, variant, drop) cell and optionally write the bundle.

    Results are merged in deterministic order regardless of worker count.
    """
    labels = [p.label for p in profiles]
    if len(set(labels)) != len(labels):
        raise ConfigError(f"profile labels must be unique, got {labels}")

    jobs = [
        (cfg, p, v, d)
        for p in profiles
        for v in variants
        for d in range(cfg.scenario.num_drops)
    ]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_job, jobs, chunksize=1))
    else:
        results = [_run_job(j) for j in jobs]

    order = {p.label: i for i, p in enumerate(profiles)}
    results.sort(key=lambda r: (order[r.label], r.variant, r.drop_index))

    records = []
    for p in profiles:
        for v in variants:
            cell = [r for r in results if r.label == p.label and r.variant == v]
            records.append(aggregate(cell))

    if out_dir is not None:
        write_bundle(Path(out_dir), cfg, profiles, variants, results, records)
    return records


_RESULT_COLUMNS = [f.name for f in dataclasses.fields(MetricsRecord)]
_RUN_COLUMNS = [f.name for f in dataclasses.fields(RunResult)]


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _write_csv(path: Path, columns: list[str], rows: list) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(columns)
        for r in rows:
            w.writerow([_fmt(getattr(r, c)) for c in columns])


def write_bundle(out_dir, cfg, profiles, variants, results, records) -> None:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_csv(out_dir / "results.csv", _RESULT_COLUMNS, records)
    _write_csv(out_dir / "runs.csv", _RUN_COLUMNS, results)
    from . import __version__

    manifest = {
        "seed": cfg.scenario.seed,
        "num_drops": cfg.scenario.num_drops,
        "sim_duration_s": cfg.scenario.sim_duration_s,
        "variants": list(variants),
        "profiles": [p.to_dict() for p in profiles],
        "config": dataclasses.asdict(cfg),
        "config_sha256": config_digest(cfg),
        "version": __version__,
    }
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))


def _dump_links(path, drop: Drop, links) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["ue", "x_m", "y_m", "distance_3d_m", "is_los", "pathloss_db", "shadow_db"])
        for ue, (pos, link) in enumerate(zip(drop.ue_positions, links)):
            w.writerow(
                [ue, repr(pos[0]), repr(pos[1]), repr(link.distance_3d_m),
                 int(link.is_los), repr(link.pathloss_db), repr(link.shadow_db)]
            )


def _dump_trace(path, rows) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["slot", "ue", "mcs", "tb_bits", "harq_attempt", "outcome"])
        w.writerows(rows)
