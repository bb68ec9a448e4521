"""Cache-free delivery schedules under a per-transmitter backhaul budget.

Both variants tile the line into subnetworks that rotate one position per
slot.  Inside a subnetwork the first half of the transmitters relay a growing
forward chain of fresh subfiles (alternating signs, accumulated gains), the
second half pre-cancel the messages of receivers below them using inverse
gains, and the last transmitter is silent to keep subnetworks independent.
Variant A uses subnetworks of 4x pairs with files in 4x-1 subfiles, variant B
subnetworks of 2x+1 pairs with files in 2x subfiles.
"""

from __future__ import annotations

from typing import Sequence

from .errors import NetworkTooSmallError, UnsupportedGammaError
from .network import LibraryConfig, NetworkConfig, SubfileId, XorSymbol
from .schedule import Schedule, Slot, Term, chain_factors, inverse_chain_factors


class NextTracker:
    """Per-receiver counter of the smallest subfile index not yet delivered."""

    def __init__(self, k: int, s: int):
        self._next = [0] * k
        self._s = s

    def peek(self, rx: int) -> int:
        return self._next[rx]

    def advance(self, rx: int) -> None:
        assert self._next[rx] < self._s, f"receiver {rx} already holds all subfiles"
        self._next[rx] += 1


def _build(
    cfg: NetworkConfig,
    lib: LibraryConfig,
    x: int,
    demands: Sequence[int],
    scheme: str,
    modulus: int,
    forward: int,
) -> Schedule:
    if cfg.k < modulus:
        raise NetworkTooSmallError(
            f"{scheme} with x={x} needs K >= {modulus}, got K={cfg.k}"
        )
    k_total = cfg.k
    s = lib.s
    tracker = NextTracker(k_total, s)

    slots: list[Slot] = []
    intended: dict[tuple[int, int], SubfileId] = {}
    for t in range(modulus):
        tx_terms: list[tuple[Term, ...]] = []
        for k in range(k_total):
            pos = (k - t) % modulus
            terms: list[Term] = []
            if pos < forward:
                for i in range(pos + 1):
                    a = k - i
                    if a < 0:
                        continue
                    sub = SubfileId(demands[a], tracker.peek(a))
                    terms.append(
                        Term(symbol=XorSymbol.of(sub), factors=chain_factors(k, i))
                    )
            elif pos < modulus - 1:
                for i in range(1, modulus - pos):
                    a = k + i
                    if a >= k_total:
                        continue
                    sub = SubfileId(demands[a], tracker.peek(a))
                    terms.append(
                        Term(
                            symbol=XorSymbol.of(sub),
                            factors=inverse_chain_factors(k, i),
                            exponent=-1,
                        )
                    )
            tx_terms.append(tuple(terms))
        slots.append(Slot(label=(scheme, t), terms=tuple(tx_terms)))

        # One receiver per subnetwork sits between the forward and backward
        # groups and is skipped this slot; receiver 0 also goes unserved when
        # its would-be server falls off the left edge.
        for rx in range(k_total):
            pos = (rx - t) % modulus
            if pos == forward or (rx == 0 and pos > forward):
                continue
            intended[(len(slots) - 1, rx)] = SubfileId(demands[rx], tracker.peek(rx))
            tracker.advance(rx)

    return Schedule(
        scheme=scheme,
        k=k_total,
        slots=slots,
        subfile_bits=lib.subfile_bits,
        params={"x": x, "reach": modulus},
        intended=intended,
    )


def build_nocache_a(
    cfg: NetworkConfig, lib: LibraryConfig, x: int, demands: Sequence[int]
) -> Schedule:
    """4x slots over subnetworks of 4x pairs; S must equal 4x-1."""
    if x < 1:
        raise UnsupportedGammaError(f"x must be a positive integer, got {x}")
    if lib.s != 4 * x - 1:
        raise UnsupportedGammaError(f"library has S={lib.s}, scheme needs S={4 * x - 1}")
    return _build(cfg, lib, x, demands, "nocache-A", modulus=4 * x, forward=2 * x)


def build_nocache_b(
    cfg: NetworkConfig, lib: LibraryConfig, x: int, demands: Sequence[int]
) -> Schedule:
    """2x+1 slots over subnetworks of 2x+1 pairs; S must equal 2x."""
    if x < 1:
        raise UnsupportedGammaError(f"x must be a positive integer, got {x}")
    if lib.s != 2 * x:
        raise UnsupportedGammaError(f"library has S={lib.s}, scheme needs S={2 * x}")
    return _build(cfg, lib, x, demands, "nocache-B", modulus=2 * x + 1, forward=x)
