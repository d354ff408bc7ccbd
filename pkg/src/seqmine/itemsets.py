"""Level-wise frequent-itemset mining and association-rule generation.

The miner follows the classic scheme: pass m counts only candidates built
from the frequent (m-1)-itemsets, and a candidate survives generation only
if all of its (m-1)-subsets were frequent. Transactions here are plain
itemsets; time plays no role.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from seqmine.errors import (
    EmptyDatabaseError,
    InvalidThresholdError,
    MissingSubsetSupportError,
    MixedSizesError,
)
from seqmine.model import Itemset, exact_fraction, min_count


@dataclass(frozen=True)
class FrequentItemset:
    itemset: Itemset
    count: int
    support: float


@dataclass(frozen=True)
class AssociationRule:
    antecedent: Itemset
    consequent: Itemset
    support: float
    confidence: float


def generate_candidates(frequent_prev: Sequence[Itemset]) -> list[Itemset]:
    """Join frequent (m-1)-itemsets into m-candidates and prune by subsets.

    Two itemsets sharing their first m-2 items join into one candidate; the
    candidate is kept only if every (m-1)-subset is itself in the input.
    Output is sorted and duplicate-free.
    """
    if not frequent_prev:
        return []
    sizes = {len(i) for i in frequent_prev}
    if len(sizes) != 1:
        raise MixedSizesError(f"input itemsets have mixed sizes: {sorted(sizes)}")
    prev = sorted(set(frequent_prev))
    prev_set = set(prev)
    m = len(prev[0]) + 1
    candidates = []
    for a_idx, a in enumerate(prev):
        for b in prev[a_idx + 1 :]:
            if a[:-1] != b[:-1]:
                # sorted input: once prefixes diverge no later b matches
                break
            candidate = a + (b[-1],)
            if all(sub in prev_set for sub in combinations(candidate, m - 1)):
                candidates.append(candidate)
    return sorted(candidates)


def _validate_threshold(value: float, name: str) -> Fraction:
    frac = exact_fraction(value)
    if not 0 < frac <= 1:
        raise InvalidThresholdError(f"{name} must be in (0, 1], got {value}")
    return frac


def mine_frequent_itemsets(
    transactions: Sequence[Itemset], min_support: float
) -> list[FrequentItemset]:
    """All itemsets whose count meets ceil(min_support * |transactions|).

    Level-wise passes: level 1 counts single items, every further level
    counts only the candidates surviving :func:`generate_candidates`, and
    mining stops at the first level that yields nothing frequent. Output is
    sorted by (size, lexicographic).
    """
    _validate_threshold(min_support, "min_support")
    if not transactions:
        raise EmptyDatabaseError("mine_frequent_itemsets needs transactions")
    n = len(transactions)
    minc = min_count(min_support, n)
    tsets = [frozenset(t) for t in transactions]

    counts: dict[Itemset, int] = {}
    for t in tsets:
        for item in t:
            counts[(item,)] = counts.get((item,), 0) + 1
    frequent: dict[Itemset, int] = {i: c for i, c in counts.items() if c >= minc}
    level = sorted(frequent)

    m = 2
    while level:
        candidates = generate_candidates(level)
        if not candidates:
            break
        cand_set = set(candidates)
        counts = dict.fromkeys(candidates, 0)
        for t in transactions:
            if len(t) < m:
                continue
            for sub in combinations(t, m):
                if sub in cand_set:
                    counts[sub] += 1
        level = sorted(i for i, c in counts.items() if c >= minc)
        frequent.update((i, counts[i]) for i in level)
        m += 1

    return [
        FrequentItemset(itemset, count, count / n)
        for itemset, count in sorted(frequent.items(), key=lambda kv: (len(kv[0]), kv[0]))
    ]


def _proper_subsets(itemset: Itemset):
    for size in range(1, len(itemset)):
        yield from combinations(itemset, size)


def generate_rules(
    frequent: Sequence[FrequentItemset], min_confidence: float
) -> list[AssociationRule]:
    """Emit X -> Z \\ X for every frequent Z and non-empty proper X subset of Z.

    Confidence is support(Z) / support(X); a rule is emitted iff its
    confidence reaches ``min_confidence``. The rule inherits Z's support.
    Output order: Z in (size, lexicographic) order, then X likewise.
    """
    min_conf = _validate_threshold(min_confidence, "min_confidence")
    count_by_itemset = {f.itemset: f.count for f in frequent}
    rules = []
    for f in sorted(frequent, key=lambda f: (len(f.itemset), f.itemset)):
        z = f.itemset
        if len(z) < 2:
            continue
        for x in sorted(_proper_subsets(z), key=lambda s: (len(s), s)):
            if x not in count_by_itemset:
                raise MissingSubsetSupportError(f"support of subset {x} is missing")
            cx = count_by_itemset[x]
            if Fraction(f.count, cx) < min_conf:
                continue
            consequent = tuple(i for i in z if i not in x)
            rules.append(AssociationRule(x, consequent, f.support, f.count / cx))
    return rules
