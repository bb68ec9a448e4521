"""Composite runs for in-between cache sizes gamma = 1/(2x).

Each file is split into two parts.  A fraction p = (2x-1)/(4x) of the bits is
cached and delivered at gamma1 = 1/(2x-1), the rest at gamma2 = 1/(2x+1); the
two cache-aided schedules run back to back.  Part sizes snap to the subfile
grids of both parts (the grid sizes are coprime, so a compatible split always
exists within one subfile of the ideal point; with F divisible by 4x the
split is exact and both parts use subfiles of F/(4x) bits).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .analysis import (
    MemorySplit,
    interior_window,
    memory_share_split,
    theory_backhaul_cached_even,
)
from .cached import build_cached_schedule
from .decode import DecodeReport, run_delivery
from .errors import InvalidConfigError, InvalidWindowError, UnsupportedGammaError
from .network import LibraryConfig, NetworkConfig
from .placement import CacheState, FileStore, place_caches
from .schedule import Schedule


def half_denominator(gamma: Fraction) -> int:
    """x such that gamma = 1/(2x)."""
    if gamma.numerator != 1 or gamma.denominator % 2 != 0:
        raise UnsupportedGammaError(f"memory sharing here handles gamma = 1/(2x), got {gamma}")
    return gamma.denominator // 2


def split_file_bits(f: int, p: Fraction, s1: int, s2: int) -> tuple[int, int]:
    """Closest split of f bits to fraction p with s1 | f1 and s2 | f2."""
    ideal = p * f
    best: int | None = None
    base = round(ideal / s1) * s1
    for offset in range(-s2, s2 + 1):
        f1 = base + offset * s1
        if 0 < f1 < f and (f - f1) % s2 == 0:
            if best is None or abs(f1 - ideal) < abs(best - ideal):
                best = f1
    if best is None:
        raise InvalidConfigError(
            f"file size {f} cannot be split on subfile grids ({s1}, {s2})"
        )
    return best, f - best


def split_store(store: FileStore, lib1: LibraryConfig, lib2: LibraryConfig) -> tuple[FileStore, FileStore]:
    """View the leading f1 bits of each file as part 1 and the rest as part 2."""
    mask2 = (1 << lib2.f) - 1
    files1 = tuple(bits >> lib2.f for bits in store.files)
    files2 = tuple(bits & mask2 for bits in store.files)
    return FileStore(lib=lib1, files=files1), FileStore(lib=lib2, files=files2)


@dataclass
class PartRun:
    """One half of a composite delivery."""

    gamma: Fraction
    lib: LibraryConfig
    store: FileStore
    caches: list[CacheState]
    schedule: Schedule
    report: DecodeReport


@dataclass
class CompositeResult:
    gamma: Fraction
    split: MemorySplit
    parts: list[PartRun]
    window: range
    store: FileStore

    @property
    def slots(self) -> int:
        return sum(len(p.schedule.slots) for p in self.parts)

    def backhaul_bits(self, tx: int) -> int:
        return sum(p.schedule.backhaul_bits(tx) for p in self.parts)

    def theory_backhaul_bits(self) -> Fraction:
        return theory_backhaul_cached_even(self.gamma) * self.store.lib.f

    def measured_pudof(self, window: Sequence[int] | None = None) -> Fraction:
        window = self.window if window is None else window
        if len(window) == 0:
            raise InvalidWindowError("empty measurement window")
        capacity = sum(len(p.schedule.slots) * p.lib.subfile_bits for p in self.parts)
        total = 0
        for part in self.parts:
            for rx in window:
                total += part.report.recovered_bits(rx, part.lib.subfile_bits)
        return Fraction(total, len(window) * capacity)

    def complete(self, rx: int) -> bool:
        return all(p.report.complete[rx] for p in self.parts)

    def bit_exact(self, rx: int) -> bool:
        return all(p.report.bit_exact[rx] for p in self.parts)

    def cached_bits(self, rx: int) -> int:
        return sum(p.caches[rx].cached_bits(p.lib.subfile_bits) for p in self.parts)

    def failures(self) -> list[tuple[int, int, str]]:
        out = []
        offset = 0
        for part in self.parts:
            out.extend((offset + s, rx, reason) for s, rx, reason in part.report.failures)
            offset += len(part.schedule.slots)
        return out


def run_memory_share(
    cfg: NetworkConfig,
    gamma: Fraction,
    demands: Sequence[int],
    n: int,
    f: int,
    payload_seed: int,
) -> CompositeResult:
    """Split the library, run both cache-aided schedules and pool the results."""
    x = half_denominator(gamma)
    gamma1 = Fraction(1, 2 * x - 1)
    gamma2 = Fraction(1, 2 * x + 1)
    split = memory_share_split(gamma, gamma1, gamma2)
    s1, s2 = 2 * x - 1, 2 * x + 1

    full_lib = LibraryConfig(n=n, f=f, s=1)
    full_store = FileStore.generate(full_lib, payload_seed)
    f1, f2 = split_file_bits(f, split.p, s1, s2)
    lib1 = LibraryConfig(n=n, f=f1, s=s1)
    lib2 = LibraryConfig(n=n, f=f2, s=s2)
    store1, store2 = split_store(full_store, lib1, lib2)

    parts = []
    for gamma_part, lib, store in ((gamma1, lib1, store1), (gamma2, lib2, store2)):
        caches = place_caches(cfg.k, lib, gamma_part, store)
        schedule = build_cached_schedule(cfg, lib, gamma_part, demands)
        report = run_delivery(schedule, cfg, caches, demands, store)
        parts.append(
            PartRun(
                gamma=gamma_part,
                lib=lib,
                store=store,
                caches=caches,
                schedule=schedule,
                report=report,
            )
        )

    window = interior_window(x, cfg.k)
    return CompositeResult(
        gamma=gamma, split=split, parts=parts, window=window, store=full_store
    )
