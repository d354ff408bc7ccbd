"""Sequential-pattern mining under gap constraints.

Two independent miners with an identical contract:

* :func:`gsp_mine` grows patterns level by level (m items per level) and
  verifies every candidate by counting against the database.
* :func:`prefixspan_mine` grows patterns depth-first, carrying for every
  sequence the set of transaction indices where the pattern's last element
  can end; that frontier is exact even with gap constraints.

Both return the same pattern set with the same counts; the test suite and
the acceptance suite hold them to that.

A word on pruning: deleting the first or the last item of a pattern can
never lower support, even under gap constraints, because the surviving
embedding keeps all its consecutive gaps (an end element either shrinks or
drops away entirely). Deleting a middle element, by contrast, fuses two
gaps into one and may violate max_gap, so the classic "every (m-1)-subsequence
must be frequent" prune is unsound here. Candidate pruning below therefore
uses only the two end deletions, and every candidate is verified by
counting anyway.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from seqmine.errors import EmptyDatabaseError
from seqmine.model import (
    Constraints,
    DataSequence,
    Pattern,
    SequenceDatabase,
    SupportedPattern,
    contains,
    min_count,
    pattern_length,
    pattern_sort_key,
)


@dataclass
class MiningStats:
    candidates_generated: int = 0
    database_passes: int = 0
    elapsed: float = 0.0


@dataclass
class MiningResult:
    patterns: list[SupportedPattern]
    stats: MiningStats


def _delete_first_item(pattern: Pattern) -> Pattern:
    head = pattern[0]
    if len(head) == 1:
        return pattern[1:]
    return (head[1:],) + pattern[1:]


def _delete_last_item(pattern: Pattern) -> Pattern:
    tail = pattern[-1]
    if len(tail) == 1:
        return pattern[:-1]
    return pattern[:-1] + (tail[:-1],)


def _finalize(pairs: dict[Pattern, int], n: int, stats: MiningStats, started: float) -> MiningResult:
    patterns = [
        SupportedPattern(p, c, c / n)
        for p, c in sorted(pairs.items(), key=lambda kv: pattern_sort_key(kv[0]))
    ]
    stats.elapsed = time.perf_counter() - started
    return MiningResult(patterns, stats)


def resolve_threads(value: Optional[int] = None) -> int:
    """Worker count for support counting; SEQMINE_THREADS caps it (0 = auto)."""
    if value is None:
        raw = os.environ.get("SEQMINE_THREADS", "1")
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"SEQMINE_THREADS must be a non-negative integer, got {raw!r}")
    if value < 0:
        raise ValueError(f"thread count must be >= 0, got {value}")
    if value == 0:
        return os.cpu_count() or 1
    return value


# below this much candidate x sequence work, thread-pool overhead wins
_THREAD_WORK_THRESHOLD = 20000


def _count_candidates(
    candidates: list[Pattern],
    sequences: Sequence[DataSequence],
    constraints: Constraints,
    threads: int,
) -> list[int]:
    """Per-candidate support counts; chunked over sequences when threaded.

    Counts are integer sums over disjoint sequence chunks, so the result is
    identical for every thread count.
    """

    def count_chunk(chunk):
        return [sum(1 for s in chunk if contains(c, s, constraints)) for c in candidates]

    if threads <= 1 or len(candidates) * len(sequences) < _THREAD_WORK_THRESHOLD:
        return count_chunk(sequences)
    step = max(1, (len(sequences) + threads - 1) // threads)
    chunks = [sequences[i : i + step] for i in range(0, len(sequences), step)]
    totals = [0] * len(candidates)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for partial in pool.map(count_chunk, chunks):
            for i, c in enumerate(partial):
                totals[i] += c
    return totals


def gsp_mine(
    db: SequenceDatabase, constraints: Constraints, *, threads: int = 1
) -> MiningResult:
    """Level-wise mining: all patterns meeting the support threshold.

    Level m extends each frequent (m-1)-pattern with each frequent item,
    either as a new trailing element or into the last element (keeping the
    element sorted); a candidate is counted only if deleting its first item
    also leaves a frequent pattern. ``stats.database_passes`` counts one
    counting sweep per level attempted.
    """
    started = time.perf_counter()
    constraints.validate()
    if not db.sequences:
        raise EmptyDatabaseError("gsp_mine needs a non-empty database")
    n = len(db.sequences)
    minc = min_count(constraints.min_support, n)
    max_len = constraints.max_length
    stats = MiningStats()

    item_counts: dict[int, int] = {}
    for seq in db.sequences:
        for item in frozenset().union(*seq.item_sets):
            item_counts[item] = item_counts.get(item, 0) + 1
    stats.candidates_generated += len(item_counts)
    stats.database_passes += 1

    frequent_items = sorted(i for i, c in item_counts.items() if c >= minc)
    frequent: dict[Pattern, int] = {((i,),): item_counts[i] for i in frequent_items}
    prev_level: list[Pattern] = sorted(frequent, key=pattern_sort_key)

    m = 2
    while prev_level and (max_len is None or m <= max_len):
        prev_set = set(prev_level)
        candidates: list[Pattern] = []
        for pattern in prev_level:
            last = pattern[-1]
            for item in frequent_items:
                grown = pattern + ((item,),)
                if _delete_first_item(grown) in prev_set:
                    candidates.append(grown)
                if item > last[-1]:
                    grown = pattern[:-1] + (last + (item,),)
                    if _delete_first_item(grown) in prev_set:
                        candidates.append(grown)
        stats.database_passes += 1
        stats.candidates_generated += len(candidates)
        counts = _count_candidates(candidates, db.sequences, constraints, threads)
        level = [c for c, cnt in zip(candidates, counts) if cnt >= minc]
        frequent.update((c, cnt) for c, cnt in zip(candidates, counts) if cnt >= minc)
        prev_level = sorted(level, key=pattern_sort_key)
        m += 1

    return _finalize(frequent, n, stats, started)


def _reachable(
    positions: Sequence[int],
    times: Sequence[int],
    n: int,
    constraints: Constraints,
) -> range | list[int]:
    """Transaction indices a next element may match, given the current ends."""
    if constraints.gaps_unbounded:
        return range(positions[0] + 1, n)
    reach = []
    for j in range(positions[0] + 1, n):
        for i in positions:
            if i >= j:
                break
            dt = times[j] - times[i]
            if dt <= constraints.min_gap:
                break
            if constraints.max_gap is not None and dt > constraints.max_gap:
                continue
            if constraints.max_index_gap is not None and j - i - 1 > constraints.max_index_gap:
                continue
            reach.append(j)
            break
    return reach


def _prefixspan(
    sequences: Sequence[DataSequence],
    minc: int,
    constraints: Constraints,
    stats: Optional[MiningStats] = None,
) -> dict[Pattern, int]:
    """Pattern-growth over end-position projections; returns pattern -> count."""
    stats = stats if stats is not None else MiningStats()
    max_len = constraints.max_length
    found: dict[Pattern, int] = {}

    seq_sets = [s.item_sets for s in sequences]
    seq_times = [s.times for s in sequences]

    first: dict[int, list[tuple[int, tuple[int, ...]]]] = {}
    for s, sets in enumerate(seq_sets):
        positions_by_item: dict[int, list[int]] = {}
        for j, items in enumerate(sets):
            for item in items:
                positions_by_item.setdefault(item, []).append(j)
        for item, js in positions_by_item.items():
            first.setdefault(item, []).append((s, tuple(js)))
    stats.candidates_generated += len(first)

    stack: list[tuple[Pattern, list[tuple[int, tuple[int, ...]]]]] = []
    for item in sorted(first):
        entries = first[item]
        if len(entries) >= minc:
            pattern: Pattern = ((item,),)
            found[pattern] = len(entries)
            if max_len is None or max_len > 1:
                stack.append((pattern, entries))

    while stack:
        pattern, projection = stack.pop()
        plen = pattern_length(pattern)
        last_max = pattern[-1][-1]

        seq_ext: dict[int, list[tuple[int, tuple[int, ...]]]] = {}
        set_ext: dict[int, list[tuple[int, tuple[int, ...]]]] = {}
        for s, positions in projection:
            sets = seq_sets[s]
            local_seq: dict[int, list[int]] = {}
            for j in _reachable(positions, seq_times[s], len(sets), constraints):
                for item in sets[j]:
                    local_seq.setdefault(item, []).append(j)
            for item, js in local_seq.items():
                seq_ext.setdefault(item, []).append((s, tuple(js)))
            local_set: dict[int, list[int]] = {}
            for j in positions:
                for item in sets[j]:
                    if item > last_max:
                        local_set.setdefault(item, []).append(j)
            for item, js in local_set.items():
                set_ext.setdefault(item, []).append((s, tuple(js)))

        stats.candidates_generated += len(seq_ext) + len(set_ext)
        grown: list[tuple[Pattern, list[tuple[int, tuple[int, ...]]]]] = []
        for item in sorted(seq_ext):
            entries = seq_ext[item]
            if len(entries) >= minc:
                grown.append((pattern + ((item,),), entries))
        for item in sorted(set_ext):
            entries = set_ext[item]
            if len(entries) >= minc:
                grown.append((pattern[:-1] + (pattern[-1] + (item,),), entries))

        for child, entries in grown:
            found[child] = len(entries)
            if max_len is None or plen + 1 < max_len:
                stack.append((child, entries))

    return found


def prefixspan_mine(db: SequenceDatabase, constraints: Constraints) -> MiningResult:
    """Pattern-growth mining; contract identical to :func:`gsp_mine`."""
    started = time.perf_counter()
    constraints.validate()
    if not db.sequences:
        raise EmptyDatabaseError("prefixspan_mine needs a non-empty database")
    n = len(db.sequences)
    stats = MiningStats(database_passes=1)
    found = _prefixspan(db.sequences, min_count(constraints.min_support, n), constraints, stats)
    return _finalize(found, n, stats, started)


def pattern_in_pattern(inner: Pattern, outer: Pattern) -> bool:
    """Unconstrained pattern-in-pattern containment (greedy element match)."""
    oi = 0
    for element in inner:
        es = set(element)
        while oi < len(outer) and not es <= set(outer[oi]):
            oi += 1
        if oi == len(outer):
            return False
        oi += 1
    return True


def filter_closed(result: MiningResult) -> MiningResult:
    """Keep only patterns with no equal-count strict superpattern in the result.

    Containment here ignores gap constraints; closedness compacts the result
    set, it is not re-checked against the database.
    """
    by_count: dict[int, list[SupportedPattern]] = {}
    for sp in result.patterns:
        by_count.setdefault(sp.count, []).append(sp)
    kept = []
    for sp in result.patterns:
        peers = by_count[sp.count]
        absorbed = any(
            pattern_length(other.pattern) > pattern_length(sp.pattern)
            and pattern_in_pattern(sp.pattern, other.pattern)
            for other in peers
        )
        if not absorbed:
            kept.append(sp)
    return MiningResult(kept, result.stats)
