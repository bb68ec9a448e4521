"""Slot-by-slot reception, interference checks, XOR resolution and reassembly."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .network import NetworkConfig, RxObservation, SubfileId, receive
from .placement import CacheState, FileStore
from .schedule import Schedule

RESIDUAL_INTERFERENCE = "residual-interference"
UNRESOLVABLE_XOR = "unresolvable-xor"
WRONG_SUBFILE = "wrong-subfile"
UNEXPECTED_SILENCE = "unexpected-silence"


@dataclass(frozen=True)
class Outcome:
    kind: str  # "recovered" | "idle" | "failure"
    subfile: Optional[SubfileId] = None
    payload: Optional[int] = None
    reason: Optional[str] = None


def decode_slot(
    obs: RxObservation,
    cache: CacheState,
    demand: int,
    expected: Optional[SubfileId],
    store: FileStore,
) -> Outcome:
    """Decode one observation against the receiver's cache.

    Success needs a single surviving term whose symbol has exactly one part
    outside the cache, matching the expected subfile of the demanded file.
    The exact coefficient is always invertible, so payload recovery is the
    on-air XOR bits stripped of every cached part.
    """
    if obs.is_empty():
        if expected is None:
            return Outcome("idle")
        return Outcome("failure", reason=UNEXPECTED_SILENCE)
    single = obs.single_term()
    if single is None:
        return Outcome("failure", reason=RESIDUAL_INTERFERENCE)
    symbol, coeff = single
    assert coeff != 0
    unknown = symbol.uncached_parts(cache.entries)
    if len(unknown) > 1:
        return Outcome("failure", reason=UNRESOLVABLE_XOR)
    if not unknown:
        return Outcome("failure", reason=WRONG_SUBFILE)
    target = unknown[0]
    if expected is None or target != expected or target.file != demand:
        return Outcome("failure", subfile=target, reason=WRONG_SUBFILE)
    bits = store.symbol_payload(symbol.parts)
    for part in symbol.parts:
        if part != target:
            bits ^= cache.payload[part]
    return Outcome("recovered", subfile=target, payload=bits)


@dataclass
class DecodeReport:
    """Everything observed while running a schedule through the channel."""

    outcomes: dict[tuple[int, int], Outcome] = field(default_factory=dict)
    recovered: dict[int, set[SubfileId]] = field(default_factory=dict)
    payloads: dict[int, dict[SubfileId, int]] = field(default_factory=dict)
    complete: dict[int, bool] = field(default_factory=dict)
    bit_exact: dict[int, bool] = field(default_factory=dict)
    # failures at receivers the schedule meant to serve
    failures: list[tuple[int, int, str]] = field(default_factory=list)
    # junk observed at receivers the schedule knowingly leaves unserved
    boundary_noise: list[tuple[int, int, str]] = field(default_factory=list)

    def recovered_bits(self, rx: int, subfile_bits: int) -> int:
        return len(self.recovered.get(rx, ())) * subfile_bits


def run_delivery(
    schedule: Schedule,
    cfg: NetworkConfig,
    caches: Sequence[CacheState],
    demands: Sequence[int],
    store: FileStore,
) -> DecodeReport:
    """Simulate every slot, decode every receiver and check file reassembly."""
    report = DecodeReport()
    for rx in range(cfg.k):
        report.recovered[rx] = set()
        report.payloads[rx] = {}

    for slot_idx, slot in enumerate(schedule.slots):
        observations = receive(slot.signals(cfg), cfg)
        for rx in range(cfg.k):
            expected = schedule.intended_for(slot_idx, rx)
            outcome = decode_slot(observations[rx], caches[rx], demands[rx], expected, store)
            report.outcomes[(slot_idx, rx)] = outcome
            if outcome.kind == "recovered":
                assert outcome.subfile is not None and outcome.payload is not None
                assert outcome.subfile not in report.recovered[rx]
                report.recovered[rx].add(outcome.subfile)
                report.payloads[rx][outcome.subfile] = outcome.payload
            elif outcome.kind == "failure":
                event = (slot_idx, rx, outcome.reason or "unknown")
                if expected is None:
                    report.boundary_noise.append(event)
                else:
                    report.failures.append(event)

    for rx in range(cfg.k):
        demand = demands[rx]
        parts: dict[SubfileId, int] = dict(report.payloads[rx])
        for sub in caches[rx].entries:
            if sub.file == demand:
                parts[sub] = caches[rx].payload[sub]
        have_all = {sub.part for sub in parts} == set(range(store.lib.s))
        report.complete[rx] = have_all
        if have_all:
            report.bit_exact[rx] = store.reassemble(parts, demand) == store.files[demand]
        else:
            report.bit_exact[rx] = False
    return report
