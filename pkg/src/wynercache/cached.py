"""Cache-aided delivery schedule for gamma = 1/(2x+1).

Delivery runs in x rounds of two slots each.  Round m serves every receiver k
the file parts indexed (k+m) mod S and (k-m) mod S: one slot per direction.
Within a slot the transmitters split into chains of 2m; counting positions
from the chain leader, the first m transmitters inject a fresh XOR while
re-sending (with alternating signs and accumulated channel products) the XORs
of the transmitters before them, the next m-1 only re-send for cancellation,
and the last stays silent so chains do not interfere with each other.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import UnsupportedGammaError
from .network import LibraryConfig, NetworkConfig, SubfileId, XorSymbol
from .schedule import Schedule, Slot, Term, chain_factors


def x_for_gamma(gamma: Fraction) -> int:
    """Number of delivery rounds for a directly supported odd cache fraction."""
    if gamma.numerator != 1 or gamma.denominator % 2 == 0:
        raise UnsupportedGammaError(
            f"cache fraction {gamma} is not 1/(2x+1); use memory sharing"
        )
    return (gamma.denominator - 1) // 2


def _xor_term(
    k: int, i: int, m: int, s: int, demands: Sequence[int], n_rx: int
) -> Term | None:
    """Term i of transmitter k in round m, dropping parts that fall off the line.

    The untruncated symbol pairs part (k+m-i) mod S for receiver k-i with part
    (k-i) mod S for receiver k+m-i.  A term whose symbol loses both parts is
    omitted entirely.
    """
    parts = []
    lo, hi = k - i, k + m - i
    if 0 <= lo < n_rx:
        parts.append(SubfileId(demands[lo], hi % s))
    if 0 <= hi < n_rx:
        parts.append(SubfileId(demands[hi], lo % s))
    if not parts:
        return None
    return Term(symbol=XorSymbol.of(*parts), factors=chain_factors(k, i), exponent=1)


def build_cached_schedule(
    cfg: NetworkConfig,
    lib: LibraryConfig,
    gamma: Fraction,
    demands: Sequence[int],
) -> Schedule:
    """Build the 2x-slot cache-aided schedule with its expected-delivery map."""
    x = x_for_gamma(gamma)
    s = 2 * x + 1
    if lib.s != s:
        raise UnsupportedGammaError(f"library has S={lib.s}, scheme needs S={s}")
    k_total = cfg.k

    slots: list[Slot] = []
    intended: dict[tuple[int, int], SubfileId] = {}
    for m in range(1, x + 1):
        for phase in (0, m):
            tx_terms: list[tuple[Term, ...]] = []
            for k in range(k_total):
                pos = (k + phase) % (2 * m)
                if pos < m:
                    i_range = range(0, pos + 1)
                elif pos < 2 * m - 1:
                    i_range = range((k + 1) % m, m)
                else:
                    i_range = range(0)
                terms = []
                for i in i_range:
                    term = _xor_term(k, i, m, s, demands, k_total)
                    if term is not None:
                        terms.append(term)
                tx_terms.append(tuple(terms))

            slot_idx = len(slots)
            slots.append(Slot(label=("cached", m, phase), terms=tuple(tx_terms)))
            for rx in range(k_total):
                pos = (rx + phase) % (2 * m)
                if pos < m:
                    part = (rx + m) % s
                elif rx >= 1:
                    # served through the relay below; receiver 0 has none
                    part = (rx - m) % s
                else:
                    continue
                intended[(slot_idx, rx)] = SubfileId(demands[rx], part)

    return Schedule(
        scheme="cached",
        k=k_total,
        slots=slots,
        subfile_bits=lib.subfile_bits,
        params={"gamma": gamma, "x": x, "reach": x},
        intended=intended,
    )
