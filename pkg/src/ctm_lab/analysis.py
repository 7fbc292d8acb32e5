"""Distribution-level reports over coding-theorem tables.

Each report is a deterministic, canonically ordered set of record sections,
so identical inputs serialize to identical bytes and acceptance testing can
diff report files directly.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from ._canon import fmt_value, meta_dumps
from .baselines import block_entropy, lz78_bit_length, shannon_entropy
from .bdm import BdmConfig, bdm_value
from .ctm import CtmTable
from .errors import ValidationError

KIND_LENGTH_BLOCKS = "length_blocks"
KIND_ANOMALIES = "anomalies"
KIND_USED_RULES = "used_rules_consistency"
KIND_DIVERGENCE = "divergence"
KIND_DIVERSITY = "diversity"
KIND_CROSS_SPACE = "cross_space"

_REPORT_MAGIC = "# ctm-report v1"


def spearman_rho(pairs) -> float:
    """Spearman rank correlation with average ranks for ties."""
    pairs = list(pairs)
    if len(pairs) < 2:
        raise ValidationError("need at least 2 pairs for a rank correlation")
    a = np.asarray([p[0] for p in pairs], dtype=float)
    b = np.asarray([p[1] for p in pairs], dtype=float)
    ra = rankdata(a)
    rb = rankdata(b)
    if (ra == ra[0]).all() or (rb == rb[0]).all():
        raise ValidationError("rank correlation undefined: a ranking has zero variance")
    ra -= ra.mean()
    rb -= rb.mean()
    return float((ra @ rb) / math.sqrt((ra @ ra) * (rb @ rb)))


@dataclass(frozen=True)
class Section:
    name: str
    columns: tuple
    rows: tuple


@dataclass(frozen=True)
class Report:
    kind: str
    provenance: dict
    sections: tuple

    def section(self, name: str) -> Section:
        for sec in self.sections:
            if sec.name == name:
                return sec
        raise ValidationError(f"report has no section {name!r}")


def report_to_csv(report: Report) -> str:
    lines = [
        _REPORT_MAGIC,
        f"# kind {report.kind}",
        "# provenance " + meta_dumps(report.provenance),
    ]
    for sec in report.sections:
        lines.append(f"# section {sec.name}")
        lines.append(",".join(sec.columns))
        for row in sec.rows:
            lines.append(",".join(fmt_value(v) for v in row))
    return "\n".join(lines) + "\n"


def report_to_json_lines(report: Report) -> str:
    out = [meta_dumps({"kind": report.kind, "provenance": report.provenance})]
    for sec in report.sections:
        for row in sec.rows:
            record = {"section": sec.name}
            for col, val in zip(sec.columns, row):
                record[col] = val
            out.append(meta_dumps(record))
    return "\n".join(out) + "\n"


def _table_provenance(table: CtmTable) -> dict:
    return {
        "normalization": table.normalization,
        "entries": len(table.entries),
        "sources": [src["spec"] for src in table.sources],
    }


def _anomaly_rows(table: CtmTable):
    """Strings that outrank at least one strictly shorter string.

    places_ahead counts the shorter strings with a strictly smaller count;
    the comparison is on raw counts, so the result does not depend on how
    ties happen to be ordered.
    """
    by_length = {}
    for s, e in table.entries.items():
        by_length.setdefault(len(s), []).append(e.count)
    lengths = sorted(by_length)
    sorted_counts = {k: sorted(by_length[k]) for k in lengths}
    rows = []
    for s, e in table.entries.items():
        ahead = 0
        for k in lengths:
            if k >= len(s):
                break
            counts = sorted_counts[k]
            ahead += _count_less_than(counts, e.count)
        if ahead > 0:
            rows.append((s, e.count, ahead))
    rows.sort(key=lambda r: (-r[1], len(r[0]), r[0]))
    return tuple(rows)


def _count_less_than(sorted_values, x) -> int:
    return bisect.bisect_left(sorted_values, x)


def length_block_report(table: CtmTable) -> Report:
    """Frequency ranking inside every length block, plus the anomalies."""
    by_length = {}
    for s, e in table.entries.items():
        by_length.setdefault(len(s), []).append((s, e))
    block_rows = []
    extreme_rows = []
    for k in sorted(by_length):
        members = sorted(by_length[k], key=lambda it: (-it[1].count, it[0]))
        zeros_rank = ones_rank = 0
        for rank, (s, e) in enumerate(members, start=1):
            block_rows.append((k, rank, s, e.count, e.complexity_bits))
            if s == "0" * k:
                zeros_rank = rank
            elif s == "1" * k:
                ones_rank = rank
        extreme_rows.append((k, len(members), zeros_rank, ones_rank))
    return Report(
        kind=KIND_LENGTH_BLOCKS,
        provenance={"table": _table_provenance(table)},
        sections=(
            Section("blocks", ("length", "rank", "string", "count", "complexity_bits"),
                    tuple(block_rows)),
            Section("block_extremes", ("length", "block_size", "zeros_rank", "ones_rank"),
                    tuple(extreme_rows)),
            Section("anomalies", ("string", "count", "places_ahead"), _anomaly_rows(table)),
        ),
    )


def anomaly_report(table: CtmTable) -> Report:
    return Report(
        kind=KIND_ANOMALIES,
        provenance={"table": _table_provenance(table)},
        sections=(
            Section("anomalies", ("string", "count", "places_ahead"), _anomaly_rows(table)),
        ),
    )


def used_rules_consistency(table: CtmTable) -> Report:
    """Complexity statistics grouped by the producers' minimum rule usage."""
    groups = {}
    pairs = []
    for s, e in table.entries.items():
        if e.min_used_rules < 1:
            raise ValidationError(f"entry {s!r} is missing min_used_rules metadata")
        groups.setdefault(e.min_used_rules, []).append(e.complexity_bits)
        pairs.append((e.min_used_rules, e.complexity_bits))
    rho = spearman_rho(pairs)
    group_rows = []
    for used in sorted(groups):
        values = groups[used]
        group_rows.append(
            (used, len(values), min(values), math.fsum(values) / len(values), max(values))
        )
    return Report(
        kind=KIND_USED_RULES,
        provenance={"table": _table_provenance(table)},
        sections=(
            Section(
                "groups",
                ("used_rules", "strings", "complexity_min", "complexity_mean", "complexity_max"),
                tuple(group_rows),
            ),
            Section("summary", ("strings_total", "spearman_rho"),
                    ((len(pairs), rho),)),
        ),
    )


def _pct_le(sorted_values, x) -> float:
    return 100.0 * bisect.bisect_right(sorted_values, x) / len(sorted_values)


def divergence_report(table: CtmTable, corpus, cfg: BdmConfig) -> Report:
    """Statistical measures next to decomposition values over a corpus.

    A string is flagged when it sits in the top entropy quartile but the
    bottom decomposition quartile (nearest-rank percentiles over the
    corpus; ties are inclusive, so reordering the corpus cannot change the
    flags).
    """
    strings = sorted(set(corpus), key=lambda s: (len(s), s))
    if not strings:
        raise ValidationError("empty corpus")
    values = {}
    for s in strings:
        values[s] = (
            bdm_value(s, table, cfg),
            shannon_entropy(s),
            block_entropy(s, cfg.block_len),
            lz78_bit_length(s),
        )
    bdm_sorted = sorted(v[0] for v in values.values())
    ent_sorted = sorted(v[1] for v in values.values())
    rows = []
    flagged_total = 0
    for s in strings:
        bdm, ent, block_ent, lz = values[s]
        flagged = _pct_le(ent_sorted, ent) > 75.0 and _pct_le(bdm_sorted, bdm) <= 25.0
        flagged_total += flagged
        rows.append((s, bdm, ent, block_ent, lz, flagged))
    return Report(
        kind=KIND_DIVERGENCE,
        provenance={
            "table": _table_provenance(table),
            "block_len": cfg.block_len,
            "boundary": cfg.boundary,
            "fallback": cfg.fallback,
        },
        sections=(
            Section(
                "strings",
                ("string", "bdm", "shannon_entropy", "block_entropy", "lz78_bits", "flagged"),
                tuple(rows),
            ),
            Section("summary", ("strings_total", "flagged_total"),
                    ((len(rows), flagged_total),)),
        ),
    )


def diversity_report(table: CtmTable, length: int, cfg: BdmConfig) -> Report:
    """Value-class counts of both measures over every string of one length."""
    if not 1 <= length <= 16:
        raise ValidationError("diversity sweeps support lengths 1..16")
    bdm_hist = {}
    lz_hist = {}
    for i in range(2 ** length):
        s = format(i, f"0{length}b")
        v = bdm_value(s, table, cfg)
        bdm_hist[v] = bdm_hist.get(v, 0) + 1
        lz = lz78_bit_length(s)
        lz_hist[lz] = lz_hist.get(lz, 0) + 1
    return Report(
        kind=KIND_DIVERSITY,
        provenance={
            "table": _table_provenance(table),
            "length": length,
            "block_len": cfg.block_len,
            "boundary": cfg.boundary,
            "fallback": cfg.fallback,
        },
        sections=(
            Section("summary",
                    ("length", "strings_total", "distinct_bdm", "distinct_lz78"),
                    ((length, 2 ** length, len(bdm_hist), len(lz_hist)),)),
            Section("bdm_histogram", ("bdm", "strings"),
                    tuple((v, bdm_hist[v]) for v in sorted(bdm_hist))),
            Section("lz78_histogram", ("bits", "strings"),
                    tuple((v, lz_hist[v]) for v in sorted(lz_hist))),
        ),
    )


def cross_space_report(small: CtmTable, large: CtmTable) -> Report:
    """Rank stability of shared strings when the rule space grows.

    Inversions are strict count disagreements between the two tables; each
    inverted pair is recorded with the small-table frequency percentile of
    both members (percentile = share of shared strings with a count no
    larger than the member's).
    """
    if small.normalization != large.normalization:
        raise ValidationError("tables use different normalizations")
    shared = sorted(set(small.entries) & set(large.entries), key=lambda s: (len(s), s))
    if not shared:
        raise ValidationError("tables share no strings")
    c_small = {s: small.entries[s].count for s in shared}
    c_large = {s: large.entries[s].count for s in shared}
    rho_all = spearman_rho([(c_small[s], c_large[s]) for s in shared])
    by_freq = sorted(shared, key=lambda s: (-c_small[s], len(s), s))
    top = by_freq[: (len(shared) + 1) // 2]
    rho_top = spearman_rho([(c_small[s], c_large[s]) for s in top])
    small_counts_sorted = sorted(c_small.values())
    pct = {s: _pct_le(small_counts_sorted, c_small[s]) for s in shared}
    inversion_rows = []
    for i, s in enumerate(shared):
        for t in shared[i + 1:]:
            ds = c_small[s] - c_small[t]
            dl = c_large[s] - c_large[t]
            if ds * dl < 0:
                hi_s, lo_s = (s, t) if ds > 0 else (t, s)
                inversion_rows.append(
                    (hi_s, lo_s, pct[hi_s], pct[lo_s], max(pct[hi_s], pct[lo_s]))
                )
    inversion_rows.sort(key=lambda r: (-r[4], r[0], r[1]))
    max_pct = max((r[4] for r in inversion_rows), default=0.0)
    return Report(
        kind=KIND_CROSS_SPACE,
        provenance={
            "small": _table_provenance(small),
            "large": _table_provenance(large),
        },
        sections=(
            Section(
                "summary",
                ("shared_strings", "rho_all", "rho_top_half", "inversions",
                 "max_inversion_percentile"),
                ((len(shared), rho_all, rho_top, len(inversion_rows), max_pct),),
            ),
            Section(
                "inversions",
                ("string_high", "string_low", "pct_high", "pct_low", "pair_percentile"),
                tuple(inversion_rows),
            ),
        ),
    )
