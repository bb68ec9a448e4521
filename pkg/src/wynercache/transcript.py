"""Human-readable slot dumps with symbolic channel-gain coefficients."""

from __future__ import annotations

from typing import Sequence

from .schedule import Schedule, Term

SILENT_MARK = "∅"  # empty set
XOR_MARK = "⊕"  # circled plus
MINUS = "−"


def file_labels(demands: Sequence[int]) -> dict[int, str]:
    """Label each demanded file by the first receiver requesting it."""
    labels: dict[int, str] = {}
    for rx, file in enumerate(demands):
        labels.setdefault(file, f"r_{rx}")
    return labels


def term_string(term: Term, labels: dict[int, str]) -> str:
    parts = [
        f"W^{{{labels.get(sub.file, str(sub.file))}}}_{sub.part}"
        for sub in term.symbol.sorted_parts()
    ]
    symbol = f" {XOR_MARK} ".join(parts)
    factors = [
        f"h_{{{j},{j + 1}}}" + ("^{-1}" if term.exponent == -1 else "")
        for j in term.factors
    ]
    prefix = (MINUS if term.sign < 0 else "") + "·".join(factors)
    if not factors:
        return symbol
    if len(parts) > 1:
        symbol = f"({symbol})"
    return f"{prefix}·{symbol}"


def sorted_terms(terms: Sequence[Term]) -> list[Term]:
    return sorted(terms, key=lambda t: (len(t.factors), t.factors))


def transmitter_strings(
    schedule: Schedule, demands: Sequence[int]
) -> dict[tuple[int, int], list[str]]:
    """Canonical term strings keyed by (slot index, transmitter index)."""
    labels = file_labels(demands)
    out: dict[tuple[int, int], list[str]] = {}
    for slot_idx, slot in enumerate(schedule.slots):
        for tx, terms in enumerate(slot.terms):
            out[(slot_idx, tx)] = [term_string(t, labels) for t in sorted_terms(terms)]
    return out


def render_schedule(
    schedule: Schedule, demands: Sequence[int], max_tx: int | None = None
) -> str:
    """Full slot-by-slot dump; silent transmitters print the empty-set mark."""
    labels = file_labels(demands)
    limit = schedule.k if max_tx is None else min(max_tx, schedule.k)
    lines = []
    for slot_idx, slot in enumerate(schedule.slots):
        label = " ".join(str(part) for part in slot.label)
        lines.append(f"slot {slot_idx} [{label}]")
        for tx in range(limit):
            terms = sorted_terms(slot.terms[tx])
            if not terms:
                body = SILENT_MARK
            else:
                chunks = []
                for idx, term in enumerate(terms):
                    text = term_string(term, labels)
                    if idx == 0:
                        chunks.append(text)
                    elif text.startswith(MINUS):
                        chunks.append(f" {MINUS} {text[1:]}")
                    else:
                        chunks.append(f" + {text}")
                body = "".join(chunks)
            lines.append(f"  tx {tx}: {body}")
    return "\n".join(lines) + "\n"
