"""Corpus I/O, validation, statistics, seeded splitting and agreement."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from .errors import InvalidLabel, MalformedMatrix, ParseError, TooSmall
from .extractor import split_head
from .rules import RuleSet
from .textnorm import has_punctuation, normalize
from .types import (
    CorpusRecord,
    HeadPosition,
    ReferentNotation,
    SpeechActType,
    Topic,
    allowed_heads,
    label_from_code,
    label_from_tag,
)

LABEL_FORMATS = ("auto", "int", "str")


def _parse_label(text: str, labels: str, line: int) -> SpeechActType:
    try:
        if labels == "int" or (labels == "auto" and text.lstrip("-").isdigit()):
            if not text.lstrip("-").isdigit():
                raise InvalidLabel(text)
            return label_from_code(int(text))
        return label_from_tag(text)
    except InvalidLabel:
        raise InvalidLabel(text, line) from None


def parse_corpus_line(text: str, line: int = 1, labels: str = "auto") -> CorpusRecord:
    cols = text.split("\t")
    if not 3 <= len(cols) <= 5:
        raise ParseError(f"expected 3 to 5 tab-separated columns, got {len(cols)}", line)
    label = _parse_label(cols[0].strip(), labels, line)
    notation = topic = None
    try:
        if len(cols) >= 4 and cols[3]:
            notation = ReferentNotation.from_tag(cols[3])
        if len(cols) == 5 and cols[4]:
            topic = Topic(cols[4])
    except ValueError as exc:
        raise ParseError(str(exc), line) from None
    return CorpusRecord(label, cols[1], cols[2], notation, topic)


def read_corpus(path, labels: str = "auto", header: bool = False) -> List[CorpusRecord]:
    """Read a tab-separated ``label / sentence / argument`` file.

    Blank lines are skipped; line numbers in errors are 1-based file lines.
    """
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, raw in enumerate(fh, start=1):
            if header and lineno == 1:
                continue
            text = raw.rstrip("\r\n")
            if not text.strip():
                continue
            records.append(parse_corpus_line(text, lineno, labels))
    return records


def format_label(label: SpeechActType, labels: str = "int") -> str:
    return label.tag if labels == "str" else str(int(label))


def format_corpus(records: Sequence[CorpusRecord], labels: str = "int", header: bool = False) -> str:
    with_topic = any(r.topic is not None for r in records)
    with_notation = with_topic or any(r.notation is not None for r in records)
    lines = []
    if header:
        cols = ["label", "sentence", "argument"]
        if with_notation:
            cols.append("notation")
        if with_topic:
            cols.append("topic")
        lines.append("\t".join(cols))
    for r in records:
        for name in ("sentence", "argument"):
            value = getattr(r, name)
            if "\t" in value or "\n" in value or "\r" in value:
                raise ValueError(f"{name} {value!r} must be a single tab-free line")
        cols = [format_label(r.label, labels), r.sentence, r.argument]
        if with_notation:
            cols.append(r.notation.value if r.notation else "")
        if with_topic:
            cols.append(r.topic.value if r.topic else "")
        lines.append("\t".join(cols))
    return "".join(line + "\n" for line in lines)


def write_corpus(records: Sequence[CorpusRecord], path, labels: str = "int", header: bool = False) -> None:
    text = format_corpus(records, labels, header)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def strip_notation(records: Iterable[CorpusRecord]) -> List[CorpusRecord]:
    return [dataclasses.replace(r, notation=None) for r in records]


class Violation(NamedTuple):
    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


def validate(record: CorpusRecord, rules: RuleSet, head_position: Optional[HeadPosition] = None) -> List[Violation]:
    """Check one record against the format contract; violations are data."""
    out = []
    if not record.sentence.strip():
        out.append(Violation("EmptyField", "sentence is empty"))
    if not record.argument.strip():
        out.append(Violation("EmptyField", "argument is empty"))
    if has_punctuation(record.sentence):
        out.append(Violation("PunctuationInSentence", "sentence contains punctuation"))
    if not record.argument.strip():
        return out

    parsed = split_head(normalize(record.argument), rules, head_position)
    allowed = allowed_heads(record.label)
    if parsed.head not in allowed:
        out.append(
            Violation(
                "HeadMismatch",
                f"{_head_name(parsed.head)} under {_label_name(record.label)}",
            )
        )
    elif not parsed.content:
        out.append(Violation("EmptyContent", "argument has a head marker but no content"))

    arg_tokens = normalize(record.argument).split()
    pronouns = sorted({t for t in arg_tokens if t in rules.pronoun_map})
    if pronouns:
        out.append(Violation("ResidualPronoun", "argument keeps " + ", ".join(pronouns)))
    polite = sorted({t for t in arg_tokens if t in rules.politeness_markers})
    if polite:
        out.append(Violation("ResidualPoliteness", "argument keeps " + ", ".join(polite)))
    return out


def _head_name(head) -> str:
    return "".join(part.capitalize() for part in head.value.split("_"))


def _label_name(label: SpeechActType) -> str:
    return "".join(part.capitalize() for part in label.name.lower().split("_"))


@dataclass
class CorpusStats:
    counts: Dict[SpeechActType, int] = field(default_factory=lambda: {t: 0 for t in SpeechActType})
    topics: Optional[Dict[Topic, int]] = None

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __add__(self, other: "CorpusStats") -> "CorpusStats":
        counts = {t: self.counts[t] + other.counts[t] for t in SpeechActType}
        if self.topics is None and other.topics is None:
            topics = None
        else:
            mine = self.topics or {}
            theirs = other.topics or {}
            topics = {t: mine.get(t, 0) + theirs.get(t, 0) for t in Topic}
        return CorpusStats(counts, topics)

    def as_dict(self) -> dict:
        d = {"counts": {t.tag: self.counts[t] for t in SpeechActType}, "total": self.total}
        if self.topics is not None:
            d["topics"] = {t.value: self.topics[t] for t in Topic}
        return d


def stats(records: Iterable[CorpusRecord]) -> CorpusStats:
    counts = {t: 0 for t in SpeechActType}
    topics = {t: 0 for t in Topic}
    seen_topic = False
    for r in records:
        counts[r.label] += 1
        if r.topic is not None:
            topics[r.topic] += 1
            seen_topic = True
    return CorpusStats(counts, topics if seen_topic else None)


# -- splitting ---------------------------------------------------------------

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 generator; tiny, fully specified, identical in any language."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Unbiased integer in ``[0, bound)`` by rejection sampling."""
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound


def seeded_permutation(n: int, seed: int) -> List[int]:
    """Fisher-Yates shuffle of ``range(n)`` driven by SplitMix64."""
    order = list(range(n))
    rng = SplitMix64(seed)
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        order[i], order[j] = order[j], order[i]
    return order


def parse_fraction(text: Union[str, float, Fraction]) -> Fraction:
    """``"9:1"`` -> 9/10, ``"0.7"`` -> 7/10, ``"9/10"`` -> 9/10."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, float):
        return Fraction(str(text))
    text = str(text).strip()
    if ":" in text:
        train, test = (Fraction(p) for p in text.split(":", 1))
        return train / (train + test)
    return Fraction(text)


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: Fraction = Fraction(9, 10)
    seed: int = 0

    def __post_init__(self):
        frac = parse_fraction(self.train_fraction)
        if not 0 < frac < 1:
            raise ValueError(f"train fraction must lie in (0, 1), got {frac}")
        object.__setattr__(self, "train_fraction", frac)

    def test_size(self, n: int) -> int:
        exact = (1 - self.train_fraction) * n
        return int(exact + Fraction(1, 2))  # round half up


def split(records: Sequence, spec: SplitSpec) -> Tuple[list, list]:
    n = len(records)
    if n < 2:
        raise TooSmall(f"need at least 2 records to split, got {n}")
    order = seeded_permutation(n, spec.seed)
    k = spec.test_size(n)
    test = [records[i] for i in order[:k]]
    train = [records[i] for i in order[k:]]
    return train, test


# -- agreement ---------------------------------------------------------------

@dataclass(frozen=True)
class AgreementMatrix:
    """items x categories counts; every row sums to ``raters``."""

    counts: Tuple[Tuple[int, ...], ...]
    raters: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], raters: Optional[int] = None) -> "AgreementMatrix":
        rows = tuple(tuple(int(c) for c in row) for row in rows)
        if not rows:
            raise MalformedMatrix("agreement matrix has no items")
        if raters is None:
            raters = sum(rows[0])
        return cls(rows, raters)

    @classmethod
    def from_ratings(cls, ratings: Sequence[Sequence], categories: Optional[Sequence] = None) -> "AgreementMatrix":
        """Build from per-item lists of the category each rater chose."""
        if categories is None:
            categories = sorted({c for item in ratings for c in item}, key=str)
        index = {c: i for i, c in enumerate(categories)}
        rows = []
        for item in ratings:
            row = [0] * len(categories)
            for c in item:
                row[index[c]] += 1
            rows.append(row)
        return cls.from_rows(rows)


def fleiss_kappa(m: Union[AgreementMatrix, Sequence[Sequence[int]]]) -> Fraction:
    """Fleiss' kappa, computed exactly over rationals."""
    if not isinstance(m, AgreementMatrix):
        m = AgreementMatrix.from_rows(m)
    n = m.raters
    if n < 2:
        raise MalformedMatrix(f"need at least 2 raters per item, got {n}")
    if not m.counts:
        raise MalformedMatrix("agreement matrix has no items")
    width = len(m.counts[0])
    for i, row in enumerate(m.counts):
        if len(row) != width or any(c < 0 for c in row):
            raise MalformedMatrix(f"item {i} has a malformed row {row}")
        if sum(row) != n:
            raise MalformedMatrix(f"item {i} sums to {sum(row)}, expected {n}")
    items = len(m.counts)
    p_bar = sum(Fraction(sum(c * (c - 1) for c in row), n * (n - 1)) for row in m.counts) / items
    column = [sum(row[j] for row in m.counts) for j in range(width)]
    p_e = sum(Fraction(c, items * n) ** 2 for c in column)
    if p_e == 1:
        return Fraction(1)
    return (p_bar - p_e) / (1 - p_e)
