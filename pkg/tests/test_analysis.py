"""Closed-form tradeoffs, the no-cache envelope and measured metrics."""

from fractions import Fraction

import pytest

from wynercache import (
    corollary_transform,
    equivalent_nocache_mt,
    figure3_data,
    figure4_data,
    measure_pudof,
    memory_share_pudof,
    memory_share_split,
    nocache_envelope,
    theory_backhaul_cached_even,
    theory_backhaul_cached_odd,
    theory_pudof_eq1,
    theory_pudof_eq2,
)
from wynercache.analysis import nocache_points
from wynercache.errors import DomainError, InvalidWindowError

F = Fraction


def test_eq1_pairs():
    assert theory_pudof_eq1(1) == (F(4, 3), F(3, 4))
    assert theory_pudof_eq1(2) == (F(16, 7), F(7, 8))
    assert theory_pudof_eq1(4) == (F(64, 15), F(15, 16))
    with pytest.raises(DomainError):
        theory_pudof_eq1(0)


def test_eq2_pairs():
    assert theory_pudof_eq2(4) == (F(5, 2), F(8, 9))
    assert theory_pudof_eq2(2) == (F(3, 2), F(4, 5))
    # integer loads sit at x = 2M-1
    for mt in range(1, 9):
        load, pudof = theory_pudof_eq2(2 * mt - 1)
        assert load == mt
        assert pudof == F(4 * mt - 2, 4 * mt - 1)
    with pytest.raises(DomainError):
        theory_pudof_eq2(0)


def test_cached_backhaul_odd():
    assert theory_backhaul_cached_odd(F(1, 5)) == F(6, 5)
    assert theory_backhaul_cached_odd(F(1, 3)) == F(2, 3)
    assert theory_backhaul_cached_odd(F(1, 7)) == F(12, 7)
    with pytest.raises(DomainError):
        theory_backhaul_cached_odd(F(1, 4))
    with pytest.raises(DomainError):
        theory_backhaul_cached_odd(F(2, 5))


def test_cached_backhaul_even_and_split_oracle():
    assert theory_backhaul_cached_even(F(1, 6)) == F(3, 2)
    assert theory_backhaul_cached_even(F(1, 8)) == F(2)
    assert theory_backhaul_cached_even(F(1, 4)) == F(1)
    with pytest.raises(DomainError):
        theory_backhaul_cached_even(F(1, 5))
    # independent recomputation of the two-part weighted load
    for x in range(1, 9):
        g1, g2 = F(1, 2 * x - 1), F(1, 2 * x + 1)
        p = F(2 * x - 1, 4 * x)
        weighted = p * (1 - g1 * g1) / (4 * g1) + (1 - p) * (1 - g2 * g2) / (4 * g2)
        assert weighted == theory_backhaul_cached_even(F(1, 2 * x)) == F(x, 2)


def test_corollary_pairs_and_identity():
    assert corollary_transform(2) == (F(16, 7), F(1, 8), F(2))
    assert corollary_transform(1) == (F(4, 3), F(1, 4), F(1))
    assert corollary_transform(3) == (F(36, 11), F(1, 12), F(3))
    for x in range(1, 9):
        before, gamma, after = corollary_transform(x)
        assert after == (1 - gamma) * before == x


def test_memory_share_split():
    for x in range(1, 9):
        split = memory_share_split(F(1, 2 * x), F(1, 2 * x - 1), F(1, 2 * x + 1))
        assert split.p == F(2 * x - 1, 4 * x)
    assert memory_share_split(F(1, 8), F(1, 8), F(1, 9)).p == 1
    assert memory_share_split(F(1, 10), F(1, 8), F(0)).p == F(4, 5)
    with pytest.raises(DomainError):
        memory_share_split(F(1, 2), F(1, 3), F(1, 5))
    with pytest.raises(DomainError):
        memory_share_split(F(1, 4), F(1, 6), F(1, 6))


def test_memory_share_pudof_values():
    assert memory_share_pudof(2, F(0)) == F(6, 7)
    assert memory_share_pudof(2, F(1, 8)) == F(1)
    assert memory_share_pudof(2, F(1, 10)) == F(27, 28)
    assert memory_share_pudof(2, F(1, 4)) == F(1)  # beyond the knot
    with pytest.raises(DomainError):
        memory_share_pudof(2, F(-1, 10))
    with pytest.raises(DomainError):
        memory_share_pudof(0, F(1, 10))


def brute_force_envelope_value(d, x_max=64):
    """Oracle: minimum over all chords between achievable points spanning d."""
    points = nocache_points(x_max)
    best = None
    for da, ma in points:
        for db, mb in points:
            if da <= d <= db:
                if da == db:
                    value = min(ma, mb)
                else:
                    value = ma + (mb - ma) * (d - da) / (db - da)
                if best is None or value < best:
                    best = value
    return best


def test_envelope_matches_brute_force_chords():
    envelope = nocache_envelope(64)
    targets = [
        F(3, 4),
        F(6, 7),
        F(9, 10),
        F(95, 99),
        F(27, 28),
        F(31, 32),
    ]
    for d in targets:
        value, saturated = equivalent_nocache_mt(d, envelope)
        assert not saturated
        assert value == brute_force_envelope_value(d)


def test_envelope_is_monotone():
    envelope = nocache_envelope(64)
    loads = [mt for _, mt in envelope]
    assert loads == sorted(loads)
    assert all(d1 < d2 for (d1, _), (d2, _) in zip(envelope, envelope[1:]))


def test_equivalent_identity_on_achievable_integer_loads():
    envelope = nocache_envelope(64)
    for mt in (1, 2, 3):
        d = memory_share_pudof(mt, F(0))
        value, saturated = equivalent_nocache_mt(d, envelope)
        assert value == mt and not saturated


def test_equivalent_saturates_past_the_ceiling():
    envelope = nocache_envelope(8)
    value, saturated = equivalent_nocache_mt(F(1), envelope)
    assert saturated
    assert value == envelope[-1][1]


def test_quoted_equivalences_exact_values():
    # frozen outputs of the envelope inversion at the two quoted operating
    # points; rounded summaries elsewhere quote these as 6 and about 7
    envelope = nocache_envelope(64)
    d1 = memory_share_pudof(3, F(1, 20))
    assert d1 == F(95, 99)
    v1, _ = equivalent_nocache_mt(d1, envelope)
    assert v1 == F(2551, 396)  # ~6.442
    d2 = memory_share_pudof(2, F(1, 10))
    assert d2 == F(27, 28)
    v2, _ = equivalent_nocache_mt(d2, envelope)
    assert v2 == F(813, 112)  # ~7.259


def test_figure3_rows():
    grid = [F(0), F(1, 20), F(1, 8), F(1, 4)]
    rows = figure3_data([1, 2], grid)
    table = {(mt, gamma): d for mt, gamma, d in rows}
    assert table[(2, F(1, 8))] == 1
    assert table[(1, F(0))] == F(2, 3)
    for mt in (1, 2):
        column = [table[(mt, g)] for g in grid]
        assert column == sorted(column)


def test_figure4_rows():
    grid = [F(0), F(1, 20), F(1, 4)]
    rows = figure4_data([2, 3], grid)
    by_key = {(mt, gamma): (eq, sat) for mt, gamma, _, eq, sat in rows}
    assert by_key[(2, F(0))] == (F(2), False)
    assert by_key[(3, F(1, 20))][0] == F(2551, 396)
    assert by_key[(2, F(1, 4))][1] is True  # puDoF 1 exceeds the envelope


def test_measure_pudof_guards():
    from wynercache.schedule import Schedule, Slot
    from wynercache.decode import DecodeReport

    schedule = Schedule(
        scheme="cached",
        k=4,
        slots=[Slot(label=("cached", 1, 0), terms=((), (), (), ()))],
        subfile_bits=64,
        params={"reach": 1},
    )
    report = DecodeReport()
    for rx in range(4):
        report.recovered[rx] = set()
    assert measure_pudof(report, schedule, range(1, 3)) == 0
    with pytest.raises(InvalidWindowError):
        measure_pudof(report, schedule, range(0))


def test_measure_backhaul_counts_distinct_subfiles():
    from wynercache import (
        LibraryConfig,
        build_cached_schedule,
        measure_backhaul,
        sample_channels,
        worst_case_demands,
    )
    from wynercache.schedule import Schedule, Slot

    k = 12
    cfg = sample_channels(k, 2)
    lib = LibraryConfig(n=k, f=320, s=5)
    schedule = build_cached_schedule(cfg, lib, F(1, 5), worst_case_demands(k, k))
    loads = measure_backhaul(schedule)
    # a round-1 XOR and its relay copy count once: interior total is 6 subfiles
    assert loads[4] == 6 * lib.subfile_bits
    silent_everywhere = Schedule(
        scheme="cached",
        k=2,
        slots=[Slot(label=("cached", 1, 0), terms=((), ()))],
        subfile_bits=64,
        params={"reach": 1},
    )
    assert measure_backhaul(silent_everywhere) == [0, 0]
