"""Receiver cache contents and library payload bookkeeping for the placement phase."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidConfigError, UnsupportedPlacementError
from .network import LibraryConfig, SubfileId


@dataclass(frozen=True)
class FileStore:
    """Library payloads: file n is an F-bit integer, split into S contiguous blocks.

    Bits are pseudorandom from the seed (never all zero) so that an XOR-decoding
    bug cannot produce accidentally correct output.
    """

    lib: LibraryConfig
    files: tuple[int, ...]

    @staticmethod
    def generate(lib: LibraryConfig, seed: int) -> "FileStore":
        rng = random.Random(seed)
        files = tuple(rng.getrandbits(lib.f) | 1 for _ in range(lib.n))
        return FileStore(lib=lib, files=files)

    def subfile(self, sub: SubfileId) -> int:
        """Bits of one subfile; block 0 is the most significant block."""
        w = self.lib.subfile_bits
        shift = (self.lib.s - 1 - sub.part) * w
        return (self.files[sub.file] >> shift) & ((1 << w) - 1)

    def symbol_payload(self, parts) -> int:
        """XOR of the payloads of the given subfiles (the on-air message bits)."""
        acc = 0
        for part in parts:
            acc ^= self.subfile(part)
        return acc

    def reassemble(self, payloads: dict[SubfileId, int], file: int) -> int | None:
        """Concatenate parts 0..S-1 of a file; None if any part is missing."""
        bits = 0
        for part in range(self.lib.s):
            sub = SubfileId(file, part)
            if sub not in payloads:
                return None
            bits = (bits << self.lib.subfile_bits) | payloads[sub]
        return bits


@dataclass(frozen=True)
class CacheState:
    """What one receiver has stored ahead of any demand."""

    receiver: int
    gamma: Fraction
    entries: frozenset[SubfileId]
    payload: dict[SubfileId, int]

    def cached_bits(self, subfile_bits: int) -> int:
        return len(self.entries) * subfile_bits


def place_caches(
    k: int, lib: LibraryConfig, gamma: Fraction, store: FileStore
) -> list[CacheState]:
    """Uniform placement: receiver k stores part [k mod S] of every file.

    Only gamma = 1/S is handled here; intermediate cache sizes go through
    memory sharing, which calls this once per file part.
    """
    if gamma != Fraction(1, lib.s):
        raise UnsupportedPlacementError(
            f"direct placement needs gamma = 1/S, got {gamma} with S={lib.s}; "
            "use memory sharing for other cache sizes"
        )
    if store.lib != lib:
        raise InvalidConfigError("store was generated for a different library")
    caches = []
    for rx in range(k):
        part = rx % lib.s
        entries = frozenset(SubfileId(n, part) for n in range(lib.n))
        payload = {sub: store.subfile(sub) for sub in entries}
        caches.append(CacheState(receiver=rx, gamma=gamma, entries=entries, payload=payload))
    return caches


def no_caches(k: int) -> list[CacheState]:
    """Cache-free receivers (gamma = 0)."""
    return [
        CacheState(receiver=rx, gamma=Fraction(0), entries=frozenset(), payload={})
        for rx in range(k)
    ]
