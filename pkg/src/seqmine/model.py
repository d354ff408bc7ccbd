"""Shared vocabulary for the mining toolkit.

Items are dense integer ids issued by an :class:`Alphabet`. An itemset is a
strictly ascending tuple of item ids, a pattern is a non-empty tuple of
itemsets, and a data-sequence is a tuple of transactions with strictly
increasing integer timestamps. Containment of a pattern in a data-sequence
optionally honors gap constraints between consecutive matched elements:

* ``min_gap``   -- exclusive lower bound on the time difference,
* ``max_gap``   -- inclusive upper bound on the time difference,
* ``max_index_gap`` -- maximum number of transactions skipped in between.

All types are immutable after construction; every function here is pure, so
shared read-only databases can be queried from many threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from seqmine.errors import (
    EmptyDatabaseError,
    EmptyElementError,
    EmptyPatternError,
    InvalidConstraintsError,
)

Itemset = tuple[int, ...]
Pattern = tuple[Itemset, ...]


class Alphabet:
    """Bidirectional token <-> dense id table.

    Ids are assigned densely in first-intern order, so a database loaded
    twice from the same text gets identical ids.
    """

    __slots__ = ("_id_by_token", "_tokens")

    def __init__(self, tokens: Iterable[str] = ()):
        self._id_by_token: dict[str, int] = {}
        self._tokens: list[str] = []
        for token in tokens:
            self.intern(token)

    def intern(self, token: str) -> int:
        """Return the id for ``token``, assigning the next dense id if new."""
        try:
            return self._id_by_token[token]
        except KeyError:
            item_id = len(self._tokens)
            self._id_by_token[token] = item_id
            self._tokens.append(token)
            return item_id

    def id_of(self, token: str) -> int:
        return self._id_by_token[token]

    def token(self, item_id: int) -> str:
        return self._tokens[item_id]

    def tokens(self) -> tuple[str, ...]:
        return tuple(self._tokens)

    def __len__(self) -> int:
        return len(self._tokens)

    def __contains__(self, token: object) -> bool:
        return token in self._id_by_token

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self._tokens == other._tokens

    def __repr__(self) -> str:
        return f"Alphabet({self._tokens!r})"


def anonymous_alphabet(size: int) -> Alphabet:
    """An alphabet with placeholder tokens, for databases built from raw ids."""
    return Alphabet(f"item{i}" for i in range(size))


@dataclass(frozen=True)
class Transaction:
    """A time-stamped itemset inside a data-sequence."""

    time: int
    items: Itemset

    def __post_init__(self):
        if not self.items:
            raise EmptyElementError("transaction itemset is empty")
        if any(b <= a for a, b in zip(self.items, self.items[1:])):
            raise ValueError(f"transaction items not strictly ascending: {self.items}")


@dataclass(frozen=True)
class DataSequence:
    """An ordered list of transactions belonging to one entity."""

    seq_id: str
    transactions: tuple[Transaction, ...]

    def __post_init__(self):
        if not self.transactions:
            raise EmptyElementError(f"data-sequence {self.seq_id!r} has no transactions")
        times = [t.time for t in self.transactions]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError(f"data-sequence {self.seq_id!r} times not strictly increasing")

    @cached_property
    def item_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(t.items) for t in self.transactions)

    @cached_property
    def times(self) -> tuple[int, ...]:
        return tuple(t.time for t in self.transactions)


@dataclass(frozen=True)
class SequenceDatabase:
    """A set of data-sequences plus the symbol table their ids refer to."""

    sequences: tuple[DataSequence, ...]
    alphabet: Alphabet

    def __post_init__(self):
        ids = [s.seq_id for s in self.sequences]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate seq_id in database")

    def __len__(self) -> int:
        return len(self.sequences)


@dataclass(frozen=True)
class Constraints:
    """Mining parameters: a support threshold plus containment constraints.

    ``min_gap`` is an exclusive lower bound and ``max_gap`` an inclusive upper
    bound on the transaction-time difference between consecutive matched
    elements; ``max_index_gap`` caps how many transactions may sit between
    them; ``max_length`` caps the number of items in a pattern. ``None``
    means unbounded.
    """

    min_support: float = 1.0
    min_gap: int = 0
    max_gap: Optional[int] = None
    max_index_gap: Optional[int] = None
    max_length: Optional[int] = None

    def validate(self) -> None:
        ms = exact_fraction(self.min_support)
        if not 0 < ms <= 1:
            raise InvalidConstraintsError(f"min_support must be in (0, 1], got {self.min_support}")
        if self.min_gap < 0:
            raise InvalidConstraintsError(f"min_gap must be >= 0, got {self.min_gap}")
        if self.max_gap is not None and self.min_gap >= self.max_gap:
            raise InvalidConstraintsError(
                f"min_gap ({self.min_gap}) must be < max_gap ({self.max_gap})"
            )
        if self.max_index_gap is not None and self.max_index_gap < 0:
            raise InvalidConstraintsError(f"max_index_gap must be >= 0, got {self.max_index_gap}")
        if self.max_length is not None and self.max_length < 1:
            raise InvalidConstraintsError(f"max_length must be >= 1, got {self.max_length}")

    @property
    def gaps_unbounded(self) -> bool:
        """True when containment degenerates to plain subsequence matching."""
        return self.min_gap == 0 and self.max_gap is None and self.max_index_gap is None


UNCONSTRAINED = Constraints()


@dataclass(frozen=True)
class SupportedPattern:
    """A pattern together with how many data-sequences contain it."""

    pattern: Pattern
    count: int
    support: float


def canonicalize(raw_pattern: Sequence[Sequence[int]]) -> Pattern:
    """Sort and dedupe every element, preserving element order.

    Raises :class:`EmptyPatternError` for a pattern with no elements and
    :class:`EmptyElementError` if any element list is empty.
    """
    if not raw_pattern:
        raise EmptyPatternError("pattern has no elements")
    elements = []
    for element in raw_pattern:
        if not element:
            raise EmptyElementError("pattern element is empty")
        elements.append(tuple(sorted(set(element))))
    return tuple(elements)


def pattern_length(pattern: Pattern) -> int:
    """Total number of items summed over all elements."""
    return sum(len(e) for e in pattern)


def pattern_sort_key(pattern: Pattern) -> tuple[int, Pattern]:
    return (pattern_length(pattern), pattern)


def exact_fraction(x) -> Fraction:
    """Recover the decimal fraction a float argument was meant to express.

    Thresholds arrive as floats (0.25, 0.07, ...). Multiplying floats by
    database sizes and flooring/ceiling them is exactly the kind of place
    where 0.07 * 100 == 7.000000000000001 ruins a count, so every threshold
    comparison in the toolkit goes through this.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(x).limit_denominator(10**9)


def min_count(min_support, db_size: int) -> int:
    """Absolute minimum count for a fractional threshold: ceil(s * n)."""
    return math.ceil(exact_fraction(min_support) * db_size)


def _gap_ok(constraints: Constraints, dt: int, skipped: int) -> bool:
    if dt <= constraints.min_gap:
        return False
    if constraints.max_gap is not None and dt > constraints.max_gap:
        return False
    if constraints.max_index_gap is not None and skipped > constraints.max_index_gap:
        return False
    return True


def contains(pattern: Pattern, seq: DataSequence, constraints: Optional[Constraints] = None) -> bool:
    """True iff ``pattern`` embeds into ``seq`` under the gap constraints.

    An embedding maps elements to transactions at strictly increasing
    indices, each element a subset of its transaction, with every
    consecutive pair satisfying the gap constraints. The search keeps the
    full frontier of feasible end positions per element, because with an
    active ``max_gap`` a greedy earliest match is not sound.
    """
    c = constraints if constraints is not None else UNCONSTRAINED
    sets = seq.item_sets
    n = len(sets)
    elements = [frozenset(e) for e in pattern]

    if c.gaps_unbounded:
        i = 0
        for es in elements:
            while i < n and not es <= sets[i]:
                i += 1
            if i == n:
                return False
            i += 1
        return True

    times = seq.times
    cur = [i for i in range(n) if elements[0] <= sets[i]]
    for es in elements[1:]:
        if not cur:
            return False
        nxt = []
        for j in range(cur[0] + 1, n):
            if not es <= sets[j]:
                continue
            for i in cur:
                if i >= j:
                    break
                dt = times[j] - times[i]
                if dt <= c.min_gap:
                    # later candidates are even closer in time
                    break
                if c.max_gap is not None and dt > c.max_gap:
                    continue
                if c.max_index_gap is not None and j - i - 1 > c.max_index_gap:
                    continue
                nxt.append(j)
                break
        cur = nxt
    return bool(cur)


def support(
    pattern: Pattern, db: SequenceDatabase, constraints: Optional[Constraints] = None
) -> SupportedPattern:
    """Count supporting data-sequences; each sequence contributes at most 1."""
    if not db.sequences:
        raise EmptyDatabaseError("support needs a non-empty database")
    count = sum(1 for seq in db.sequences if contains(pattern, seq, constraints))
    return SupportedPattern(pattern, count, count / len(db.sequences))


def itemset_support(itemset: Itemset, transactions: Sequence[Itemset]) -> tuple[int, float]:
    """(count, fraction) of transactions containing ``itemset``."""
    if not transactions:
        raise EmptyDatabaseError("itemset_support needs a non-empty transaction list")
    wanted = frozenset(itemset)
    count = sum(1 for t in transactions if wanted <= frozenset(t))
    return count, count / len(transactions)
