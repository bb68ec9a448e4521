"""Shared schedule structures: signed channel-factor terms, slots and schedules.

A transmitted term keeps its channel factors symbolically (indices into the
gain vector, with a common exponent) so transcripts can print the coefficient
structure exactly; the numeric coefficient is derived from the same data.
Every factor contributes one sign flip, so a term's sign is the parity of its
factor list.  Factors that would fall off the left edge of the network are
dropped together with their sign flip, which is what makes edge-truncated
messages come out with coefficient +1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .network import NetworkConfig, SubfileId, TxSignal, XorSymbol


@dataclass(frozen=True)
class Term:
    """coefficient * symbol, with coefficient = prod over factors of (-h) or (-1/h)."""

    symbol: XorSymbol
    factors: tuple[int, ...]
    exponent: int = 1  # +1: product of gains; -1: product of inverse gains

    @property
    def sign(self) -> int:
        return -1 if len(self.factors) % 2 else 1

    def coefficient(self, cfg: NetworkConfig) -> Fraction:
        coeff = Fraction(1)
        for j in self.factors:
            g = cfg.gains[j]
            coeff *= -g if self.exponent == 1 else -1 / g
        return coeff


@dataclass(frozen=True)
class Slot:
    """One transmission slot: a label and one term list per transmitter."""

    label: tuple
    terms: tuple[tuple[Term, ...], ...]

    def signals(self, cfg: NetworkConfig) -> list[TxSignal]:
        return [
            TxSignal.from_terms((t.symbol, t.coefficient(cfg)) for t in tx_terms)
            for tx_terms in self.terms
        ]


@dataclass
class Schedule:
    """Ordered slots plus the bookkeeping of who is expected to decode what."""

    scheme: str
    k: int
    slots: list[Slot]
    subfile_bits: int
    params: dict = field(default_factory=dict)
    # (slot index, receiver) -> subfile the receiver should recover; absent
    # entries mark receivers the scheme does not serve in that slot.
    intended: dict[tuple[int, int], SubfileId] = field(default_factory=dict)

    def intended_for(self, slot: int, receiver: int) -> Optional[SubfileId]:
        return self.intended.get((slot, receiver))

    def transmitter_subfiles(self, tx: int) -> set[SubfileId]:
        """Distinct subfiles transmitter tx must fetch over the whole delivery."""
        fetched: set[SubfileId] = set()
        for slot in self.slots:
            for term in slot.terms[tx]:
                fetched.update(term.symbol.parts)
        return fetched

    def backhaul_bits(self, tx: int) -> int:
        return len(self.transmitter_subfiles(tx)) * self.subfile_bits


def chain_factors(k: int, i: int) -> tuple[int, ...]:
    """Forward relay factors h_{k-i,k-i+1} ... h_{k-1,k}, clipped at the left edge."""
    return tuple(range(max(k - i, 0), k))


def inverse_chain_factors(k: int, i: int) -> tuple[int, ...]:
    """Backward relay factors h_{k,k+1} ... h_{k+i-2,k+i-1} (used inverted)."""
    return tuple(range(k, k + i - 1))
