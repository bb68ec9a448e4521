"""Topology, exact signal algebra and the reception law of the two-neighbor line network.

Transmitter k is heard by receivers k and k+1 only.  All channel gains and
signal coefficients are exact rationals (fractions.Fraction), so interference
cancellation is checked as equality with zero, never as a small magnitude.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import InvalidConfigError, ShapeError

# Primes up to 997; gains are ratios of two distinct primes so that two
# different products of gains can never coincide by accident.
_PRIMES = [p for p in range(2, 998) if all(p % q for q in range(2, int(p**0.5) + 1))]


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse an exact rational from a "p/q" string (also accepts ints/Fractions)."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(text.strip())


def format_rational(value: Fraction) -> str:
    """Render a Fraction as "p/q" (or "p" when the denominator is 1)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Fraction, digits: int = 12) -> str:
    """Decimal rendering at the given number of significant digits."""
    return f"{float(value):.{digits}g}"


class SubfileId(NamedTuple):
    """One fixed-size piece of one library file."""

    file: int
    part: int


@dataclass(frozen=True)
class XorSymbol:
    """An atomic message: one subfile, or two distinct subfiles combined by XOR."""

    parts: frozenset[SubfileId]

    def __post_init__(self) -> None:
        if not 1 <= len(self.parts) <= 2:
            raise ValueError(f"symbol must hold 1 or 2 subfiles, got {len(self.parts)}")

    @staticmethod
    def of(*parts: SubfileId) -> "XorSymbol":
        return XorSymbol(frozenset(parts))

    def sorted_parts(self) -> list[SubfileId]:
        return sorted(self.parts)

    def uncached_parts(self, cached: Iterable[SubfileId]) -> list[SubfileId]:
        cached_set = set(cached)
        return [p for p in self.sorted_parts() if p not in cached_set]


@dataclass(frozen=True)
class TxSignal:
    """Formal linear combination of symbols sent by one transmitter.

    An empty term map means the transmitter is silent.  Zero coefficients are
    never stored.
    """

    terms: Mapping[XorSymbol, Fraction] = field(default_factory=dict)

    @staticmethod
    def silent() -> "TxSignal":
        return TxSignal({})

    @staticmethod
    def from_terms(pairs: Iterable[tuple[XorSymbol, Fraction]]) -> "TxSignal":
        acc: dict[XorSymbol, Fraction] = {}
        for symbol, coeff in pairs:
            total = acc.get(symbol, Fraction(0)) + coeff
            if total:
                acc[symbol] = total
            else:
                acc.pop(symbol, None)
        return TxSignal(acc)

    def is_silent(self) -> bool:
        return not self.terms

    def scaled(self, factor: Fraction) -> "TxSignal":
        if not factor:
            return TxSignal.silent()
        return TxSignal({s: c * factor for s, c in self.terms.items()})


@dataclass(frozen=True)
class RxObservation:
    """Aggregate signal heard by one receiver, zero terms pruned."""

    receiver: int
    terms: Mapping[XorSymbol, Fraction]

    def is_empty(self) -> bool:
        return not self.terms

    def single_term(self) -> tuple[XorSymbol, Fraction] | None:
        if len(self.terms) != 1:
            return None
        return next(iter(self.terms.items()))


@dataclass(frozen=True)
class NetworkConfig:
    """K transmitter/receiver pairs and the K-1 cross gains h_{k,k+1}."""

    k: int
    gains: tuple[Fraction, ...]
    seed: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise InvalidConfigError(f"need at least one pair, got K={self.k}")
        if len(self.gains) != self.k - 1:
            raise InvalidConfigError(
                f"expected {self.k - 1} cross gains for K={self.k}, got {len(self.gains)}"
            )
        if any(g == 0 for g in self.gains):
            raise InvalidConfigError("every cross gain must be nonzero")


@dataclass(frozen=True)
class LibraryConfig:
    """N files of F bits, each split into S equal subfiles."""

    n: int
    f: int
    s: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidConfigError(f"need at least one file, got N={self.n}")
        if self.s < 1 or self.f % self.s != 0:
            raise InvalidConfigError(f"subfile count S={self.s} must divide F={self.f}")

    @property
    def subfile_bits(self) -> int:
        return self.f // self.s


def worst_case_demands(k: int, n: int) -> list[int]:
    """Demand map r_k; pairwise distinct whenever the library is large enough."""
    return [rx % n for rx in range(k)]


def sample_channels(k: int, seed: int) -> NetworkConfig:
    """Draw K-1 pairwise-distinct nonzero gains, deterministically from the seed.

    Each gain is a ratio of two distinct primes below 1000, so no gain ever
    equals a product chain of other gains and no wanted coefficient can vanish.
    """
    if k < 1:
        raise InvalidConfigError(f"need at least one pair, got K={k}")
    rng = random.Random(seed)
    gains: list[Fraction] = []
    seen: set[Fraction] = set()
    while len(gains) < k - 1:
        p = rng.choice(_PRIMES)
        q = rng.choice(_PRIMES)
        if p == q:
            continue
        g = Fraction(p, q)
        if g in seen:
            continue
        seen.add(g)
        gains.append(g)
    return NetworkConfig(k=k, gains=tuple(gains), seed=seed)


def receive(signals: Sequence[TxSignal], cfg: NetworkConfig) -> list[RxObservation]:
    """Apply the reception law: y_k = x_k + h_{k-1,k} * x_{k-1} (y_0 = x_0).

    Term-wise exact sums; terms whose aggregate coefficient is zero vanish.
    """
    if len(signals) != cfg.k:
        raise ShapeError(f"expected {cfg.k} signals, got {len(signals)}")
    observations = []
    for rx in range(cfg.k):
        acc: dict[XorSymbol, Fraction] = {}
        contributions = [(signals[rx], Fraction(1))]
        if rx > 0:
            contributions.append((signals[rx - 1], cfg.gains[rx - 1]))
        for signal, channel in contributions:
            for symbol, coeff in signal.terms.items():
                total = acc.get(symbol, Fraction(0)) + coeff * channel
                if total:
                    acc[symbol] = total
                else:
                    acc.pop(symbol, None)
        observations.append(RxObservation(receiver=rx, terms=acc))
    return observations
