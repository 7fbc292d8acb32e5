"""Exhaustive enumeration of a rule space into a frequency table.

run_space drives every machine index of (n, 2) through the sound
non-halting filters and the step cutoff, then aggregates halting outputs
into per-string counts. Two interchangeable engines exist: a scalar one
built directly on machine.simulate, and a vectorized numpy engine that
steps whole index batches in lockstep. They classify every run identically,
so their tables are byte-equal; the scalar engine doubles as the
independent oracle for the fast path.

Determinism contract: the resulting FrequencyTable depends only on the
SpaceSpec, never on shard boundaries, worker count, or scheduling. Shards
are disjoint contiguous index ranges; merging is an associative fold.
"""

from __future__ import annotations

import json
import multiprocessing
from dataclasses import asdict, dataclass, field

import numpy as np

from ._canon import canonical_key, meta_dumps
from .errors import ParseError, ValidationError
from .machine import BLANK_ESCAPE, NO_HALT_RULE, Halted, NonHaltingProved, RunConfig, decode_machine, simulate

BLANK_ZERO = "zero"
BLANK_BOTH = "both"
BLANK_MODES = (BLANK_ZERO, BLANK_BOTH)

_MAX_STATES = 6  # keeps indices inside uint64 for the vector engine
_BATCH = 1 << 19

_FREQ_MAGIC = "# ctm-freq v1"
_FREQ_COLUMNS = "string,count,min_used_rules,first_producer"


def space_size(n: int) -> int:
    """(4n + 2)^(2n), the number of machines with n states and 2 symbols."""
    if n < 1:
        raise ValidationError(f"state count must be >= 1, got {n}")
    if n > _MAX_STATES:
        raise ValidationError(
            f"space size for n={n} exceeds the supported enumeration range (n <= {_MAX_STATES})"
        )
    return (4 * n + 2) ** (2 * n)


def default_max_steps(n: int) -> int:
    """Step cutoffs validated by the 10x re-run check on full spaces."""
    if n <= 2:
        return 10
    if n == 3:
        return 30
    raise ValidationError(f"no validated default cutoff for n={n}; set max_steps explicitly")


@dataclass(frozen=True)
class FilterFlags:
    """Which sound non-halting filters a space run applies."""

    no_halt_rule: bool = True
    blank_escape: bool = True
    cycle: bool = False


@dataclass(frozen=True)
class SpaceSpec:
    """Everything that determines a space run's result."""

    n: int
    blank_mode: str = BLANK_ZERO
    max_steps: int = 0  # 0 means: use default_max_steps(n)
    filters: FilterFlags = field(default_factory=FilterFlags)
    cycle_memory_limit: int = 10_000

    def __post_init__(self):
        space_size(self.n)  # validates n
        if self.blank_mode not in BLANK_MODES:
            raise ValidationError(f"unknown blank mode {self.blank_mode!r}")
        if self.max_steps == 0:
            object.__setattr__(self, "max_steps", default_max_steps(self.n))
        if self.max_steps < 1:
            raise ValidationError("max_steps must be >= 1")

    @property
    def size(self) -> int:
        return space_size(self.n)

    @property
    def run_count(self) -> int:
        """Machine runs performed: the space size, doubled for both blanks."""
        return self.size * (2 if self.blank_mode == BLANK_BOTH else 1)

    @property
    def blanks(self):
        return (0, 1) if self.blank_mode == BLANK_BOTH else (0,)

    def run_config(self, blank: int) -> RunConfig:
        return RunConfig(
            max_steps=self.max_steps,
            blank=blank,
            check_no_halt_rule=self.filters.no_halt_rule,
            check_blank_escape=self.filters.blank_escape,
            check_cycles=self.filters.cycle,
            cycle_memory_limit=self.cycle_memory_limit,
        )

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "blank_mode": self.blank_mode,
            "max_steps": self.max_steps,
            "filters": asdict(self.filters),
            "cycle_memory_limit": self.cycle_memory_limit,
        }

    @staticmethod
    def from_dict(d: dict) -> "SpaceSpec":
        return SpaceSpec(
            n=d["n"],
            blank_mode=d["blank_mode"],
            max_steps=d["max_steps"],
            filters=FilterFlags(**d["filters"]),
            cycle_memory_limit=d["cycle_memory_limit"],
        )


@dataclass
class Census:
    """How every run of a space was classified."""

    total_runs: int = 0
    halted: int = 0
    no_halt_rule: int = 0
    blank_escape: int = 0
    cycle_detected: int = 0
    step_limited: int = 0

    @property
    def proved_non_halting(self) -> int:
        return self.no_halt_rule + self.blank_escape + self.cycle_detected

    def add(self, other: "Census") -> None:
        self.total_runs += other.total_runs
        self.halted += other.halted
        self.no_halt_rule += other.no_halt_rule
        self.blank_escape += other.blank_escape
        self.cycle_detected += other.cycle_detected
        self.step_limited += other.step_limited

    def as_dict(self) -> dict:
        return {
            "total_runs": self.total_runs,
            "halted": self.halted,
            "no_halt_rule": self.no_halt_rule,
            "blank_escape": self.blank_escape,
            "cycle_detected": self.cycle_detected,
            "step_limited": self.step_limited,
        }


@dataclass
class FrequencyTable:
    """Aggregated halting outputs of a space run.

    counts maps each produced binary string to how many runs produced it;
    min_used_rules keeps the smallest number of distinct transition entries
    any producer exercised, and first_producer the smallest producing
    machine index (blank-0 runs take precedence over blank-1 at equal
    index). covers lists the contiguous index ranges the table aggregates,
    or None for ad-hoc index sets such as strided samples.
    """

    spec: SpaceSpec
    counts: dict
    min_used_rules: dict
    first_producer: dict
    census: Census
    covers: tuple = ()

    def validate(self) -> None:
        if sum(self.counts.values()) != self.census.halted:
            raise ValidationError("census.halted does not match the sum of counts")
        parts = (
            self.census.halted
            + self.census.proved_non_halting
            + self.census.step_limited
        )
        if parts != self.census.total_runs:
            raise ValidationError("census categories do not partition total_runs")
        for s in self.counts:
            if not s or set(s) - {"0", "1"}:
                raise ValidationError(f"count key is not a nonempty binary string: {s!r}")

    def records(self):
        recs = [
            (s, c, self.min_used_rules[s], self.first_producer[s])
            for s, c in self.counts.items()
        ]
        recs.sort(key=canonical_key)
        return recs

    def canonical_bytes(self) -> bytes:
        meta = {
            "census": self.census.as_dict(),
            "covers": None if self.covers is None else [list(r) for r in self.covers],
            "spec": self.spec.as_dict(),
        }
        lines = [_FREQ_MAGIC, "# meta " + meta_dumps(meta), _FREQ_COLUMNS]
        for s, count, used, first in self.records():
            lines.append(f"{s},{count},{used},{first}")
        return ("\n".join(lines) + "\n").encode("utf-8")


def save_frequency_table(table: FrequencyTable, path) -> None:
    with open(path, "wb") as fh:
        fh.write(table.canonical_bytes())


def load_frequency_table(path) -> FrequencyTable:
    with open(path, "rb") as fh:
        text = fh.read().decode("utf-8")
    lines = text.splitlines()
    if not lines or lines[0] != _FREQ_MAGIC:
        raise ParseError("not a ctm-freq file", line=1)
    if len(lines) < 3 or not lines[1].startswith("# meta "):
        raise ParseError("missing meta header", line=2)
    try:
        meta = json.loads(lines[1][len("# meta "):])
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad meta header: {exc}", line=2) from exc
    if lines[2] != _FREQ_COLUMNS:
        raise ParseError("unexpected column header", line=3)
    counts, used, first = {}, {}, {}
    for lineno, line in enumerate(lines[3:], start=4):
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 4:
            raise ParseError("expected 4 fields", line=lineno)
        s = parts[0]
        if s in counts:
            raise ParseError(f"duplicate string {s!r}", line=lineno)
        try:
            counts[s] = int(parts[1])
            used[s] = int(parts[2])
            first[s] = int(parts[3])
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from exc
    covers = meta.get("covers")
    table = FrequencyTable(
        spec=SpaceSpec.from_dict(meta["spec"]),
        counts=counts,
        min_used_rules=used,
        first_producer=first,
        census=Census(**meta["census"]),
        covers=None if covers is None else tuple(tuple(r) for r in covers),
    )
    table.validate()
    return table


@dataclass(frozen=True)
class ShardPlan:
    """Disjoint, ordered, exhaustive contiguous index ranges."""

    shards: tuple

    def __post_init__(self):
        prev = None
        for lo, hi in self.shards:
            if lo >= hi:
                raise ValidationError(f"empty shard range ({lo}, {hi})")
            if prev is not None and lo != prev:
                raise ValidationError("shard ranges must be contiguous and ordered")
            prev = hi


def make_shard_plan(total: int, shard_count: int) -> ShardPlan:
    if shard_count < 1:
        raise ValidationError("shard_count must be >= 1")
    shard_count = min(shard_count, total)
    bounds = [total * i // shard_count for i in range(shard_count + 1)]
    return ShardPlan(tuple((bounds[i], bounds[i + 1]) for i in range(shard_count)))


# ---------------------------------------------------------------------------
# Result accumulation shared by both engines


class _Sink:
    def __init__(self, spec):
        self.spec = spec
        self.counts = {}
        self.min_used = {}
        self.first = {}
        self.census = Census()

    def add_string(self, s, count, used, first):
        if s in self.counts:
            self.counts[s] += count
            if used < self.min_used[s]:
                self.min_used[s] = used
            if first < self.first[s]:
                self.first[s] = first
        else:
            self.counts[s] = count
            self.min_used[s] = used
            self.first[s] = first

    def table(self, covers):
        return FrequencyTable(
            spec=self.spec,
            counts=self.counts,
            min_used_rules=self.min_used,
            first_producer=self.first,
            census=self.census,
            covers=covers,
        )


# ---------------------------------------------------------------------------
# Scalar engine (reference implementation)


def _run_scalar(spec: SpaceSpec, indices, sink: _Sink) -> None:
    for blank in spec.blanks:
        cfg = spec.run_config(blank)
        census = sink.census
        for index in indices:
            outcome = simulate(decode_machine(int(index), spec.n), cfg)
            census.total_runs += 1
            if isinstance(outcome, Halted):
                census.halted += 1
                sink.add_string(outcome.output, 1, outcome.used_rules, int(index))
            elif isinstance(outcome, NonHaltingProved):
                if outcome.reason == NO_HALT_RULE:
                    census.no_halt_rule += 1
                elif outcome.reason == BLANK_ESCAPE:
                    census.blank_escape += 1
                else:
                    census.cycle_detected += 1
            else:
                census.step_limited += 1


# ---------------------------------------------------------------------------
# Vectorized engine


def _vector_pass(spec: SpaceSpec, idx: np.ndarray, blank: int, sink: _Sink) -> None:
    """Step one batch of machine indices in lockstep for one blank symbol."""
    n = spec.n
    base = 4 * n + 2
    two_n = 2 * n
    halt_floor = 4 * n
    m = idx.size
    sink.census.total_runs += m

    rem = idx.astype(np.uint64, copy=True)
    ords = np.empty((m, two_n), np.uint8)
    for slot in range(two_n - 1, -1, -1):
        ords[:, slot] = (rem % base).astype(np.uint8)
        rem //= base

    if spec.filters.no_halt_rule:
        has_halt = (ords >= halt_floor).any(axis=1)
        sink.census.no_halt_rule += int(m - has_halt.sum())
        live = np.nonzero(has_halt)[0]
        if live.size == 0:
            return
        ords = ords[live]
        idx = idx[live]
    count = idx.size

    esc = None
    if spec.filters.blank_escape:
        blank_slots = 2 * np.arange(n) + blank
        b_ord = ords[:, blank_slots]
        b_step = b_ord < halt_floor
        b_move = (b_ord % two_n) // n
        b_next = (b_ord % n).astype(np.int64)
        esc = []
        for d in (0, 1):
            e = b_step & (b_move == d)
            # each pass extends the checked walk by one state; n passes cover
            # a full pigeonhole cycle, so the flag is exact
            for _ in range(n):
                e = e & np.take_along_axis(e, b_next, axis=1)
            esc.append(e)

    width = 2 * spec.max_steps + 1
    center = spec.max_steps
    tape = np.full((count, width), blank, np.uint8)
    state0 = np.zeros(count, np.int16)
    pos = np.full(count, center, np.int32)
    lo = pos.copy()
    hi = pos.copy()
    used = np.zeros(count, np.uint16)
    outcome = np.zeros(count, np.uint8)  # 0 running, 1 halted, 2 escape proved
    pow2 = (np.uint16(1) << np.arange(two_n)).astype(np.uint16)

    alive = np.arange(count)
    for _ in range(spec.max_steps):
        p = pos[alive]
        slot = 2 * state0[alive] + tape[alive, p]
        used[alive] |= pow2[slot]
        o = ords[alive, slot]
        halting = o >= halt_floor
        tape[alive, p] = np.where(halting, o - halt_floor, o // two_n).astype(np.uint8)
        if halting.any():
            outcome[alive[halting]] = 1
        stepping = alive[~halting]
        if stepping.size == 0:
            break
        oo = o[~halting]
        move = (oo % two_n) // n
        new_pos = p[~halting] + (move.astype(np.int32) * 2 - 1)
        new_state = (oo % n).astype(np.int16)
        state0[stepping] = new_state
        pos[stepping] = new_pos
        dead = np.zeros(stepping.size, bool)
        fresh_r = new_pos > hi[stepping]
        fresh_l = new_pos < lo[stepping]
        if esc is not None:
            if fresh_r.any():
                rows = np.nonzero(fresh_r)[0]
                hit = esc[1][stepping[rows], new_state[rows]]
                outcome[stepping[rows[hit]]] = 2
                dead[rows[hit]] = True
            if fresh_l.any():
                rows = np.nonzero(fresh_l)[0]
                hit = esc[0][stepping[rows], new_state[rows]]
                outcome[stepping[rows[hit]]] = 2
                dead[rows[hit]] = True
        hi[stepping] = np.maximum(hi[stepping], new_pos)
        lo[stepping] = np.minimum(lo[stepping], new_pos)
        alive = stepping[~dead]
        if alive.size == 0:
            break

    sink.census.blank_escape += int((outcome == 2).sum())
    sink.census.step_limited += int((outcome == 0).sum())
    halted_rows = np.nonzero(outcome == 1)[0]
    sink.census.halted += int(halted_rows.size)
    if halted_rows.size == 0:
        return

    lengths = (hi[halted_rows] - lo[halted_rows] + 1).astype(np.int64)
    used_rules = np.bitwise_count(used[halted_rows]).astype(np.int64)
    producer = idx[halted_rows].astype(np.int64)

    narrow = lengths <= 64
    if not narrow.all():
        # Rare wide outputs (only reachable with very large cutoffs): build
        # the strings row by row and leave the packed fast path to the rest.
        for row in np.nonzero(~narrow)[0]:
            r = halted_rows[row]
            cells = tape[r, lo[r]:hi[r] + 1]
            s = "".join("1" if c else "0" for c in cells)
            sink.add_string(s, 1, int(used_rules[row]), int(producer[row]))
        keep = np.nonzero(narrow)[0]
        halted_rows = halted_rows[keep]
        lengths = lengths[keep]
        used_rules = used_rules[keep]
        producer = producer[keep]
        if halted_rows.size == 0:
            return

    value = np.zeros(halted_rows.size, np.uint64)
    max_len = int(lengths.max())
    for j in range(max_len):
        col = np.minimum(lo[halted_rows] + j, width - 1)
        bit = tape[halted_rows, col].astype(np.uint64)
        within = j < lengths
        value = np.where(within, (value << np.uint64(1)) | bit, value)

    order = np.lexsort((value, lengths))
    s_len = lengths[order]
    s_val = value[order]
    s_used = used_rules[order]
    s_prod = producer[order]
    boundary = np.empty(order.size, bool)
    boundary[0] = True
    boundary[1:] = (s_val[1:] != s_val[:-1]) | (s_len[1:] != s_len[:-1])
    starts = np.nonzero(boundary)[0]
    group_counts = np.diff(np.append(starts, order.size))
    group_used = np.minimum.reduceat(s_used, starts)
    group_prod = np.minimum.reduceat(s_prod, starts)
    for k, start in enumerate(starts):
        s = np.binary_repr(int(s_val[start]), width=int(s_len[start]))
        sink.add_string(s, int(group_counts[k]), int(group_used[k]), int(group_prod[k]))


def _run_vector(spec: SpaceSpec, indices: np.ndarray, sink: _Sink) -> None:
    if spec.filters.cycle:
        raise ValidationError("the vector engine does not implement the cycle filter")
    for blank in spec.blanks:
        for start in range(0, indices.size, _BATCH):
            _vector_pass(spec, indices[start:start + _BATCH], blank, sink)


def _resolve_engine(spec: SpaceSpec, engine: str) -> str:
    if engine == "auto":
        return "scalar" if spec.filters.cycle else "vector"
    if engine not in ("scalar", "vector"):
        raise ValidationError(f"unknown engine {engine!r}")
    return engine


def run_index_array(spec: SpaceSpec, indices, engine: str = "auto") -> FrequencyTable:
    """Run an arbitrary (sorted, duplicate-free) index set; covers stays None."""
    indices = np.asarray(indices, np.uint64)
    sink = _Sink(spec)
    if _resolve_engine(spec, engine) == "vector":
        _run_vector(spec, indices, sink)
    else:
        _run_scalar(spec, indices, sink)
    table = sink.table(covers=None)
    table.validate()
    return table


def _run_range_raw(spec: SpaceSpec, lo: int, hi: int, engine: str):
    sink = _Sink(spec)
    if _resolve_engine(spec, engine) == "vector":
        _run_vector(spec, np.arange(lo, hi, dtype=np.uint64), sink)
    else:
        _run_scalar(spec, range(lo, hi), sink)
    return sink.counts, sink.min_used, sink.first, sink.census, (lo, hi)


def _shard_worker(args):
    spec_dict, lo, hi, engine = args
    return _run_range_raw(SpaceSpec.from_dict(spec_dict), lo, hi, engine)


def _raw_to_table(spec, raw) -> FrequencyTable:
    counts, used, first, census, cover = raw
    return FrequencyTable(spec, counts, used, first, census, covers=(cover,))


def run_space(
    spec: SpaceSpec,
    plan: ShardPlan = None,
    workers: int = 1,
    engine: str = "auto",
) -> FrequencyTable:
    """Enumerate the whole space described by spec into a FrequencyTable.

    The result is byte-identical for every plan and worker count; shards
    only bound the unit of parallel work. Partial tables are merged in
    shard order.
    """
    if workers < 1:
        raise ValidationError("workers must be >= 1")
    if plan is None:
        plan = make_shard_plan(spec.size, max(workers * 4, 1))
    if plan.shards[0][0] != 0 or plan.shards[-1][1] != spec.size:
        raise ValidationError("shard plan must cover the full index range")
    engine = _resolve_engine(spec, engine)
    jobs = [(spec.as_dict(), lo, hi, engine) for lo, hi in plan.shards]
    if workers == 1 or len(jobs) == 1:
        raws = [_run_range_raw(spec, lo, hi, engine) for _, lo, hi, _ in jobs]
    else:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(processes=workers) as pool:
            raws = pool.map(_shard_worker, jobs, chunksize=1)
    parts = [_raw_to_table(spec, raw) for raw in raws]
    table = merge_shards(parts)
    table.validate()
    return table


def run_strided_sample(spec: SpaceSpec, stride: int, engine: str = "auto") -> FrequencyTable:
    """Deterministic sample: every stride-th index starting at 0."""
    if stride < 1:
        raise ValidationError("stride must be >= 1")
    return run_index_array(spec, np.arange(0, spec.size, stride, dtype=np.uint64), engine)


def _normalize_covers(ranges):
    merged = []
    for lo, hi in sorted(ranges):
        if merged and lo < merged[-1][1]:
            raise ValidationError("shard index ranges overlap")
        if merged and lo == merged[-1][1]:
            merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return tuple(merged)


def merge_shards(parts) -> FrequencyTable:
    """Associative, order-insensitive merge of disjoint partial tables."""
    parts = list(parts)
    if not parts:
        raise ValidationError("nothing to merge")
    spec = parts[0].spec
    ranges = []
    for part in parts:
        if part.spec != spec:
            raise ValidationError("cannot merge tables from different space specs")
        if part.covers is None:
            raise ValidationError("cannot merge ad-hoc index samples")
        ranges.extend(part.covers)
    sink = _Sink(spec)
    for part in parts:
        sink.census.add(part.census)
        for s, count in part.counts.items():
            sink.add_string(s, count, part.min_used_rules[s], part.first_producer[s])
    return sink.table(covers=_normalize_covers(ranges))


def empty_table(spec: SpaceSpec) -> FrequencyTable:
    """Merge identity: a table covering no index range."""
    return FrequencyTable(spec, {}, {}, {}, Census(), covers=())
