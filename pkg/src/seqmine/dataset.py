"""File formats, the bundled university-results data, and trend analysis.

Three text formats, all UTF-8 with ``#`` comment lines:

* sequence-CSV: one transaction per line, ``seq_id,time,items`` with
  space-separated item tokens and a base-10 integer time. Lines may arrive
  unsorted; equal-time transactions of one sequence are merged.
* transactions-CSV: ``txn_id,items``.
* results-CSV: header ``year,subject_code,pass_pct``; pass percentages are
  exact decimals with at most 2 fractional digits.

Pass percentages are kept as :class:`decimal.Decimal` throughout so the
bundled tables reproduce bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from importlib import resources
from typing import Iterator, Optional, Sequence

from seqmine.errors import (
    DuplicateKeyError,
    InsufficientHistoryError,
    NonIntegerTimeError,
    OutOfRangeError,
    ParseError,
)
from seqmine.model import Alphabet, DataSequence, SequenceDatabase, Transaction

BUNDLED_RESULTS = "university_results.csv"


def _lines(source) -> Iterator[tuple[int, str]]:
    """Yield (line_no, stripped_line) skipping blanks and comments."""
    if isinstance(source, str):
        source = source.splitlines()
    for line_no, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield line_no, line


def _parse_sequence_line(line_no: int, line: str, alphabet: Alphabet):
    parts = line.split(",")
    if len(parts) != 3:
        raise ParseError(line_no, f"expected 'seq_id,time,items', got {line!r}")
    seq_id, time_text, items_text = (p.strip() for p in parts)
    if not seq_id:
        raise ParseError(line_no, "empty seq_id")
    try:
        time = int(time_text)
    except ValueError:
        raise NonIntegerTimeError(line_no, f"time must be a base-10 integer, got {time_text!r}")
    tokens = items_text.split()
    if not tokens:
        raise ParseError(line_no, "transaction has no items")
    return seq_id, time, [alphabet.intern(t) for t in tokens]


def load_sequence_db(source) -> SequenceDatabase:
    """Parse sequence-CSV text into a database with dense interned item ids."""
    alphabet = Alphabet()
    by_seq: dict[str, dict[int, set[int]]] = {}
    for line_no, line in _lines(source):
        seq_id, time, items = _parse_sequence_line(line_no, line, alphabet)
        by_seq.setdefault(seq_id, {}).setdefault(time, set()).update(items)
    sequences = []
    for seq_id, by_time in by_seq.items():
        transactions = tuple(
            Transaction(time, tuple(sorted(by_time[time]))) for time in sorted(by_time)
        )
        sequences.append(DataSequence(seq_id, transactions))
    return SequenceDatabase(tuple(sequences), alphabet)


def iter_sequence_db(source, alphabet: Alphabet) -> Iterator[DataSequence]:
    """Incremental sequence-CSV reader for stream replay.

    Transactions of one sequence must be contiguous; a sequence is emitted
    when its seq_id run ends. A seq_id reappearing later is an error.
    """
    current_id: Optional[str] = None
    by_time: dict[int, set[int]] = {}
    done: set[str] = set()

    def build() -> DataSequence:
        transactions = tuple(
            Transaction(time, tuple(sorted(by_time[time]))) for time in sorted(by_time)
        )
        return DataSequence(current_id, transactions)  # type: ignore[arg-type]

    for line_no, line in _lines(source):
        seq_id, time, items = _parse_sequence_line(line_no, line, alphabet)
        if seq_id != current_id:
            if current_id is not None:
                yield build()
                done.add(current_id)
            if seq_id in done:
                raise ParseError(line_no, f"seq_id {seq_id!r} reappears after its run ended")
            current_id = seq_id
            by_time = {}
        by_time.setdefault(time, set()).update(items)
    if current_id is not None:
        yield build()


def serialize_sequence_db(db: SequenceDatabase) -> str:
    """Canonical sequence-CSV text: transactions in time order, tokens sorted.

    Loading the output reproduces the database token-for-token, and
    serializing the reloaded database reproduces the same bytes.
    """
    lines = []
    for seq in db.sequences:
        for t in seq.transactions:
            tokens = " ".join(sorted(db.alphabet.token(i) for i in t.items))
            lines.append(f"{seq.seq_id},{t.time},{tokens}")
    return "\n".join(lines) + ("\n" if lines else "")


def load_transactions(source) -> tuple[list[tuple[int, ...]], Alphabet]:
    """Parse transactions-CSV into (itemset list, alphabet), in file order."""
    alphabet = Alphabet()
    transactions = []
    for line_no, line in _lines(source):
        parts = line.split(",")
        if len(parts) != 2:
            raise ParseError(line_no, f"expected 'txn_id,items', got {line!r}")
        _, items_text = parts
        tokens = items_text.split()
        if not tokens:
            raise ParseError(line_no, "transaction has no items")
        transactions.append(tuple(sorted({alphabet.intern(t) for t in tokens})))
    return transactions, alphabet


@dataclass(frozen=True)
class ResultRecord:
    year: int
    subject_code: str
    pass_pct: Decimal


RESULTS_HEADER = "year,subject_code,pass_pct"


def load_results(source) -> list[ResultRecord]:
    """Parse results-CSV; exact decimals, unique (year, subject) keys."""
    records = []
    seen: set[tuple[int, str]] = set()
    header_seen = False
    for line_no, line in _lines(source):
        if not header_seen:
            if line != RESULTS_HEADER:
                raise ParseError(line_no, f"expected header {RESULTS_HEADER!r}, got {line!r}")
            header_seen = True
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise ParseError(line_no, f"expected 'year,subject_code,pass_pct', got {line!r}")
        year_text, subject, pct_text = parts
        try:
            year = int(year_text)
        except ValueError:
            raise ParseError(line_no, f"year must be an integer, got {year_text!r}")
        if not subject:
            raise ParseError(line_no, "empty subject_code")
        try:
            pct = Decimal(pct_text)
        except InvalidOperation:
            raise ParseError(line_no, f"pass_pct must be a decimal, got {pct_text!r}")
        if not pct.is_finite() or -pct.as_tuple().exponent > 2:
            raise OutOfRangeError(line_no, f"pass_pct must have at most 2 fractional digits: {pct_text}")
        if not Decimal(0) <= pct <= Decimal(100):
            raise OutOfRangeError(line_no, f"pass_pct out of [0, 100]: {pct_text}")
        key = (year, subject)
        if key in seen:
            raise DuplicateKeyError(line_no, f"duplicate (year, subject) pair {key}")
        seen.add(key)
        records.append(ResultRecord(year, subject, pct))
    if not header_seen:
        raise ParseError(0, "results file is empty")
    return records


def bundled_results_text() -> str:
    return (
        resources.files("seqmine").joinpath("data").joinpath(BUNDLED_RESULTS).read_text(encoding="utf-8")
    )


def bundled_results() -> list[ResultRecord]:
    """The packaged university pass-percentage dataset."""
    return load_results(bundled_results_text())


@dataclass(frozen=True)
class BandScheme:
    """Half-open bins over [0, 100]; the final bound is inclusive.

    ``bins`` is an ascending tuple of (upper_bound, label): a value v maps
    to the first bin with v < upper_bound, except that the last bin also
    takes v == 100.
    """

    bins: tuple[tuple[Decimal, str], ...]

    def validate(self) -> None:
        if not self.bins:
            raise ValueError("band scheme needs at least one bin")
        bounds = [b for b, _ in self.bins]
        if any(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:])):
            raise ValueError(f"band bounds must be strictly increasing: {bounds}")
        if bounds[-1] != Decimal(100):
            raise ValueError(f"final band bound must be 100, got {bounds[-1]}")

    def label(self, value: Decimal) -> str:
        for bound, label in self.bins[:-1]:
            if value < bound:
                return label
        return self.bins[-1][1]


DEFAULT_BANDS = BandScheme(
    (
        (Decimal(50), "F"),
        (Decimal(70), "C"),
        (Decimal(85), "B"),
        (Decimal(100), "A"),
    )
)


def parse_band_spec(spec: str) -> BandScheme:
    """Parse a CLI band spec like ``50:F,70:C,85:B,100:A``."""
    bins = []
    for part in spec.split(","):
        bound_text, _, label = part.partition(":")
        if not label:
            raise ValueError(f"band {part!r} must look like '<bound>:<label>'")
        try:
            bound = Decimal(bound_text.strip())
        except InvalidOperation:
            raise ValueError(f"band bound must be a decimal, got {bound_text!r}")
        bins.append((bound, label.strip()))
    scheme = BandScheme(tuple(bins))
    scheme.validate()
    return scheme


def discretize(records: Sequence[ResultRecord], scheme: BandScheme = DEFAULT_BANDS) -> SequenceDatabase:
    """One data-sequence per subject; each year becomes one transaction whose
    single item is ``subject:band``, enabling cross-year sequential mining."""
    scheme.validate()
    alphabet = Alphabet()
    by_subject: dict[str, list[ResultRecord]] = {}
    for record in records:
        by_subject.setdefault(record.subject_code, []).append(record)
    sequences = []
    for subject in sorted(by_subject):
        rows = sorted(by_subject[subject], key=lambda r: r.year)
        transactions = tuple(
            Transaction(r.year, (alphabet.intern(f"{subject}:{scheme.label(r.pass_pct)}"),))
            for r in rows
        )
        sequences.append(DataSequence(subject, transactions))
    return SequenceDatabase(tuple(sequences), alphabet)


@dataclass(frozen=True)
class TrendRow:
    year: int
    pass_pct: Decimal
    delta: Optional[Decimal]
    direction: Optional[str]


@dataclass(frozen=True)
class TrendSummary:
    per_subject: dict[str, list[TrendRow]]
    anomalies: list[tuple[str, int, Decimal]]


def trend(records: Sequence[ResultRecord], anomaly_threshold: Decimal = Decimal("20.0")) -> TrendSummary:
    """Year-over-year deltas, directions, and |delta| > threshold anomalies."""
    by_subject: dict[str, list[ResultRecord]] = {}
    for record in records:
        by_subject.setdefault(record.subject_code, []).append(record)
    per_subject: dict[str, list[TrendRow]] = {}
    anomalies: list[tuple[str, int, Decimal]] = []
    for subject in sorted(by_subject):
        rows = sorted(by_subject[subject], key=lambda r: r.year)
        if len(rows) < 2:
            raise InsufficientHistoryError(subject)
        out = [TrendRow(rows[0].year, rows[0].pass_pct, None, None)]
        for prev, cur in zip(rows, rows[1:]):
            delta = cur.pass_pct - prev.pass_pct
            direction = "flat" if delta == 0 else ("up" if delta > 0 else "down")
            out.append(TrendRow(cur.year, cur.pass_pct, delta, direction))
            if abs(delta) > anomaly_threshold:
                anomalies.append((subject, cur.year, delta))
        per_subject[subject] = out
    return TrendSummary(per_subject, anomalies)
