"""Closed-form tradeoffs, measured metrics and the figure data behind them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .decode import DecodeReport
from .errors import DomainError, InvalidWindowError
from .schedule import Schedule

# ---------------------------------------------------------------------------
# closed forms, no caching


def theory_pudof_eq1(x: int) -> tuple[Fraction, Fraction]:
    """Backhaul/puDoF pair (4x^2/(4x-1), (4x-1)/(4x)) of the 4x-slot scheme."""
    if x < 1:
        raise DomainError(f"x must be a positive integer, got {x}")
    return Fraction(4 * x * x, 4 * x - 1), Fraction(4 * x - 1, 4 * x)


def theory_pudof_eq2(x: int) -> tuple[Fraction, Fraction]:
    """Backhaul/puDoF pair ((x+1)/2, 2x/(2x+1)) of the (2x+1)-slot scheme."""
    if x < 1:
        raise DomainError(f"x must be a positive integer, got {x}")
    return Fraction(x + 1, 2), Fraction(2 * x, 2 * x + 1)


# ---------------------------------------------------------------------------
# closed forms, cache-aided


def theory_backhaul_cached_odd(gamma: Fraction) -> Fraction:
    """Per-transmitter load (1-gamma^2)/(4*gamma) for gamma = 1/(2x+1)."""
    if gamma.numerator != 1 or gamma.denominator % 2 == 0:
        raise DomainError(f"gamma must be 1/(2x+1), got {gamma}")
    return (1 - gamma * gamma) / (4 * gamma)


def theory_backhaul_cached_even(gamma: Fraction) -> Fraction:
    """Per-transmitter load 1/(4*gamma) for gamma = 1/(2x) (memory sharing)."""
    if gamma.numerator != 1 or gamma.denominator % 2 != 0:
        raise DomainError(f"gamma must be 1/(2x), got {gamma}")
    return 1 / (4 * gamma)


def corollary_transform(x: int) -> tuple[Fraction, Fraction, Fraction]:
    """Effect of adding gamma = 1/(4x) caches on top of the 4x-slot no-cache point.

    Returns (load before, gamma, load after); the load shrinks by exactly
    1-gamma while full per-user DoF becomes reachable.
    """
    if x < 1:
        raise DomainError(f"x must be a positive integer, got {x}")
    before, _ = theory_pudof_eq1(x)
    gamma = Fraction(1, 4 * x)
    after = (1 - gamma) * before
    assert after == x
    assert theory_backhaul_cached_even(gamma) == after
    return before, gamma, after


@dataclass(frozen=True)
class MemorySplit:
    """File split with fraction p cached at gamma1 and the rest at gamma2."""

    p: Fraction
    gamma1: Fraction
    gamma2: Fraction


def memory_share_split(gamma: Fraction, gamma1: Fraction, gamma2: Fraction) -> MemorySplit:
    """Solve gamma = p*gamma1 + (1-p)*gamma2 for the split fraction p."""
    if gamma1 == gamma2:
        raise DomainError("the two cache fractions must differ")
    if not (min(gamma1, gamma2) <= gamma <= max(gamma1, gamma2)):
        raise DomainError(f"gamma={gamma} outside [{gamma2}, {gamma1}]")
    p = (gamma - gamma2) / (gamma1 - gamma2)
    return MemorySplit(p=p, gamma1=gamma1, gamma2=gamma2)


def nocache_pudof(mt: int) -> Fraction:
    """puDoF of an integer backhaul load with no caching: (4*mt-2)/(4*mt-1)."""
    if mt < 1:
        raise DomainError(f"backhaul load must be a positive integer, got {mt}")
    return Fraction(4 * mt - 2, 4 * mt - 1)


def memory_share_pudof(mt: int, gamma: Fraction) -> Fraction:
    """puDoF of (integer load mt, cache fraction gamma) via a two-part file split.

    A fraction p = 4*gamma*mt of each file is cached at gamma1 = 1/(4*mt)
    (served interference free), the rest is served cache free; the two delivery
    times add and the puDoF is (1-gamma) over the total.
    """
    if mt < 1:
        raise DomainError(f"backhaul load must be a positive integer, got {mt}")
    if gamma < 0:
        raise DomainError(f"cache fraction must be nonnegative, got {gamma}")
    gamma1 = Fraction(1, 4 * mt)
    if gamma >= gamma1:
        return Fraction(1)
    p = 4 * gamma * mt
    time = p * (1 - gamma1) + (1 - p) / nocache_pudof(mt)
    return (1 - gamma) / time


# ---------------------------------------------------------------------------
# no-cache envelope and figure data


def nocache_points(x_max: int = 64) -> list[tuple[Fraction, Fraction]]:
    """Achievable (puDoF, load) points of both no-cache schemes, x = 1..x_max."""
    points = []
    for x in range(1, x_max + 1):
        for mt, d in (theory_pudof_eq1(x), theory_pudof_eq2(x)):
            points.append((d, mt))
    return points


def nocache_envelope(x_max: int = 64) -> list[tuple[Fraction, Fraction]]:
    """Lower convex envelope of required load as a function of puDoF."""
    best: dict[Fraction, Fraction] = {}
    for d, mt in nocache_points(x_max):
        if d not in best or mt < best[d]:
            best[d] = mt
    points = sorted(best.items())
    hull: list[tuple[Fraction, Fraction]] = []
    for d, mt in points:
        while len(hull) >= 2:
            (d1, m1), (d2, m2) = hull[-2], hull[-1]
            if (m2 - m1) * (d - d2) >= (mt - m2) * (d2 - d1):
                hull.pop()
            else:
                break
        hull.append((d, mt))
    return hull


def equivalent_nocache_mt(
    d: Fraction, envelope: Sequence[tuple[Fraction, Fraction]]
) -> tuple[Fraction, bool]:
    """Load on the no-cache envelope reaching puDoF d; saturates at the ceiling."""
    if not envelope:
        raise DomainError("empty envelope")
    if d <= envelope[0][0]:
        return envelope[0][1], False
    if d > envelope[-1][0]:
        return envelope[-1][1], True
    for (da, ma), (db, mb) in zip(envelope, envelope[1:]):
        if da <= d <= db:
            return ma + (mb - ma) * (d - da) / (db - da), False
    raise AssertionError("unreachable: d inside envelope range")


def figure3_data(
    mt_list: Iterable[int], gamma_grid: Iterable[Fraction]
) -> list[tuple[int, Fraction, Fraction]]:
    """Rows (load, gamma, puDoF) for the puDoF-versus-cache-size curves."""
    return [
        (mt, gamma, memory_share_pudof(mt, gamma))
        for mt in mt_list
        for gamma in gamma_grid
    ]


def figure4_data(
    mt_list: Iterable[int],
    gamma_grid: Iterable[Fraction],
    x_max: int = 64,
) -> list[tuple[int, Fraction, Fraction, Fraction, bool]]:
    """Rows (load, gamma, puDoF, equivalent no-cache load, saturated flag)."""
    envelope = nocache_envelope(x_max)
    rows = []
    for mt in mt_list:
        for gamma in gamma_grid:
            d = memory_share_pudof(mt, gamma)
            equivalent, saturated = equivalent_nocache_mt(d, envelope)
            rows.append((mt, gamma, d, equivalent, saturated))
    return rows


# ---------------------------------------------------------------------------
# measured metrics


def interior_window(reach: int, k: int) -> range:
    """Receivers (and transmitters) far enough from both edges: [2*reach, K-2*reach-1]."""
    return range(2 * reach, k - 2 * reach)


def schedule_window(schedule: Schedule) -> range:
    window = interior_window(schedule.params["reach"], schedule.k)
    if len(window) == 0:
        raise InvalidWindowError(
            f"K={schedule.k} leaves no interior for reach {schedule.params['reach']}"
        )
    return window


def measure_backhaul(schedule: Schedule) -> list[int]:
    """Bits each transmitter fetches; a subfile fetched once is never re-fetched."""
    return [schedule.backhaul_bits(tx) for tx in range(schedule.k)]


def measure_pudof(report: DecodeReport, schedule: Schedule, window: Sequence[int]) -> Fraction:
    """Average delivered bits per windowed receiver over the total slot capacity.

    Each slot can carry one subfile per receiver, so full service in every
    slot measures exactly 1.
    """
    if len(window) == 0:
        raise InvalidWindowError("empty measurement window")
    capacity = len(schedule.slots) * schedule.subfile_bits
    if capacity == 0:
        return Fraction(0)
    total = sum(report.recovered_bits(rx, schedule.subfile_bits) for rx in window)
    return Fraction(total, len(window) * capacity)


@dataclass(frozen=True)
class Metrics:
    """Measured quantities next to their closed-form predictions."""

    slots: int
    window: tuple[int, int]
    measured_pudof: Fraction
    theory_pudof: Fraction
    backhaul_bits_max_window: int
    backhaul_bits_mean_window: Fraction
    backhaul_bits_max_global: int
    theory_backhaul_files: Fraction
    file_bits: int

    @property
    def theory_backhaul_bits(self) -> Fraction:
        return self.theory_backhaul_files * self.file_bits
