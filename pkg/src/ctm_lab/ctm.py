"""Coding-theorem tables: output frequencies turned into complexity estimates.

A CtmTable assigns every produced string an empirical probability and the
matching complexity in bits, -log2(probability). Under the halting_machines
normalization the probabilities form a distribution (they divide by the
number of halting runs); all_machines keeps the raw ratio against every run
performed, so the mass sums to halted/total <= 1.

Tables merge incrementally across rule spaces: for a string known to both,
the entry from the larger space wins, because a bigger exhaustive
enumeration is strictly more evidence.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from ._canon import canonical_key, fmt_float, meta_dumps
from .errors import ParseError, ValidationError
from .space import FrequencyTable

NORM_HALTING = "halting_machines"
NORM_ALL = "all_machines"
NORMALIZATIONS = (NORM_HALTING, NORM_ALL)

_TABLE_MAGIC = "# ctm-table v1"
_TABLE_COLUMNS = "string,count,probability,complexity_bits,min_used_rules,source_space"


@dataclass(frozen=True)
class CtmEntry:
    count: int
    probability: float
    complexity_bits: float
    min_used_rules: int
    source_space: int


@dataclass
class CtmTable:
    """string -> (probability, complexity) estimates plus their provenance.

    sources records each contributing space run's parameters and census.
    Immutable by convention once built; merge returns new tables.
    """

    normalization: str
    entries: dict
    sources: tuple

    def __post_init__(self):
        if self.normalization not in NORMALIZATIONS:
            raise ValidationError(f"unknown normalization {self.normalization!r}")

    def probability_sum(self) -> float:
        return math.fsum(e.probability for e in self.entries.values())

    def records(self):
        recs = [
            (s, e.count, e.probability, e.complexity_bits, e.min_used_rules, e.source_space)
            for s, e in self.entries.items()
        ]
        recs.sort(key=canonical_key)
        return recs


def _source_info(freq: FrequencyTable) -> dict:
    return {
        "spec": freq.spec.as_dict(),
        "census": freq.census.as_dict(),
    }


def to_ctm(freq: FrequencyTable, normalization: str = NORM_HALTING) -> CtmTable:
    """Build a CtmTable from a space run's frequency table."""
    if normalization not in NORMALIZATIONS:
        raise ValidationError(f"unknown normalization {normalization!r}")
    if not freq.counts or freq.census.halted <= 0:
        raise ValidationError("frequency table has no halting runs")
    denom = (
        freq.census.halted if normalization == NORM_HALTING else freq.census.total_runs
    )
    entries = {}
    for s, count in freq.counts.items():
        p = count / denom
        entries[s] = CtmEntry(
            count=count,
            probability=p,
            complexity_bits=-math.log2(p),
            min_used_rules=freq.min_used_rules[s],
            source_space=freq.spec.n,
        )
    return CtmTable(normalization, entries, (_source_info(freq),))


def complexity_of(table: CtmTable, s: str):
    """Complexity in bits for s, or None when the table has no entry."""
    entry = table.entries.get(s)
    return None if entry is None else entry.complexity_bits


def merge_ctm(older: CtmTable, newer: CtmTable) -> CtmTable:
    """Incremental update: larger source spaces override shared strings."""
    if older.normalization != newer.normalization:
        raise ValidationError("cannot merge tables with different normalizations")
    entries = dict(older.entries)
    for s, entry in newer.entries.items():
        current = entries.get(s)
        if current is None or entry.source_space >= current.source_space:
            entries[s] = entry
    seen = set()
    sources = []
    for src in older.sources + newer.sources:
        key = meta_dumps(src)
        if key not in seen:
            seen.add(key)
            sources.append(src)
    sources.sort(key=lambda src: (src["spec"]["n"], meta_dumps(src)))
    return CtmTable(older.normalization, entries, tuple(sources))


def dumps_ctm_table(table: CtmTable) -> bytes:
    """Canonical serialization; identical tables produce identical bytes."""
    meta = {
        "normalization": table.normalization,
        "sources": list(table.sources),
        "tool_version": _tool_version(),
    }
    lines = [_TABLE_MAGIC, "# meta " + meta_dumps(meta), _TABLE_COLUMNS]
    for s, count, p, c, used, source in table.records():
        lines.append(f"{s},{count},{fmt_float(p)},{fmt_float(c)},{used},{source}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def loads_ctm_table(data: bytes) -> CtmTable:
    lines = data.decode("utf-8").splitlines()
    if not lines or lines[0] != _TABLE_MAGIC:
        raise ParseError("not a ctm-table file", line=1)
    if len(lines) < 3 or not lines[1].startswith("# meta "):
        raise ParseError("missing meta header", line=2)
    try:
        meta = json.loads(lines[1][len("# meta "):])
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad meta header: {exc}", line=2) from exc
    if lines[2] != _TABLE_COLUMNS:
        raise ParseError("unexpected column header", line=3)
    normalization = meta.get("normalization")
    if normalization not in NORMALIZATIONS:
        raise ValidationError(f"unknown normalization in file: {normalization!r}")
    entries = {}
    for lineno, line in enumerate(lines[3:], start=4):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 6:
            raise ParseError("expected 6 fields", line=lineno)
        s = parts[0]
        if not s or set(s) - {"0", "1"}:
            raise ParseError(f"not a binary string: {s!r}", line=lineno)
        if s in entries:
            raise ParseError(f"duplicate string {s!r}", line=lineno)
        try:
            entries[s] = CtmEntry(
                count=int(parts[1]),
                probability=float(parts[2]),
                complexity_bits=float(parts[3]),
                min_used_rules=int(parts[4]),
                source_space=int(parts[5]),
            )
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from exc
    return CtmTable(normalization, entries, tuple(meta.get("sources", ())))


def save_ctm_table(table: CtmTable, path) -> None:
    with open(path, "wb") as fh:
        fh.write(dumps_ctm_table(table))


def load_ctm_table(path) -> CtmTable:
    with open(path, "rb") as fh:
        return loads_ctm_table(fh.read())


def _tool_version() -> str:
    from . import __version__

    return __version__
