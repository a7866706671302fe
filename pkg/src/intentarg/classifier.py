"""Rule-based speech-act typing of normalized utterances.

Priority, highest first: strong requirement (a prohibition clause and a
requirement clause), prohibition, requirement, alternative question, wh-
question, yes/no question, non-directive.  Rhetorical and intonation-only
questions are out of reach of a text-only rule system and are accepted as
whatever their surface cues say.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .errors import EmptyUtterance
from .rules import COMMAND_KINDS, Hit, RuleSet
from .textnorm import surfaces
from .types import HeadPosition, SpeechActType

PH = "PH"
REQ = "REQ"


class ClauseSpan(NamedTuple):
    """Half-open token range ``[start, end)`` tagged PH or REQ."""

    tag: str
    start: int
    end: int


@dataclass(frozen=True)
class ClassificationResult:
    label: Optional[SpeechActType]
    trace: Tuple[str, ...] = ()
    clause_spans: Tuple[ClauseSpan, ...] = ()

    @property
    def is_directive(self) -> bool:
        return self.label is not None


def _leading_fillers(hits: List[Hit]) -> int:
    pos = 0
    for h in hits:
        if h.start != pos or h.kind != "filler":
            break
        pos = h.end
    return pos


def _segments(tokens, hits, rules) -> List[Tuple[int, int]]:
    n = len(tokens)
    first = _leading_fillers(hits)
    bounds = [first]
    if rules.head_position is HeadPosition.INITIAL:
        ends_at = {h.end: h for h in hits if h.kind == "politeness"}
        for h in hits:
            if h.kind != "prohibition" and h.kind not in COMMAND_KINDS:
                continue
            b = h.start
            while b in ends_at:
                b = ends_at[b].start
            if b > bounds[-1]:
                bounds.append(b)
    else:
        for h in hits:
            if h.kind in ("prohibition", "clause_ender") and bounds[-1] < h.end < n:
                bounds.append(h.end)
    fillers = {h.start: h for h in hits if h.kind == "filler"}
    filler_ends = {h.end: h for h in hits if h.kind == "filler"}
    segments = []
    for i, start in enumerate(bounds):
        end = bounds[i + 1] if i + 1 < len(bounds) else n
        while start in fillers and fillers[start].end <= end:
            start = fillers[start].end
        if i + 1 < len(bounds):
            while end in filler_ends and filler_ends[end].start >= start:
                end = filler_ends[end].start
        if start < end:
            segments.append((start, end))
    return segments


def _tagged_clauses(tokens, hits, rules) -> List[ClauseSpan]:
    spans = []
    for start, end in _segments(tokens, hits, rules):
        inside = [h for h in hits if start <= h.start < end]
        if any(h.kind == "prohibition" for h in inside):
            tag = PH
        elif any(h.kind in COMMAND_KINDS for h in inside):
            tag = REQ
        else:
            continue
        if spans and spans[-1].tag == tag:
            spans[-1] = ClauseSpan(tag, spans[-1].start, end)
        else:
            spans.append(ClauseSpan(tag, start, end))
    return spans


def split_clauses(tokens: Sequence, rules: RuleSet, hits: Optional[List[Hit]] = None) -> List[ClauseSpan]:
    """Split a command into PH/REQ clauses.

    A command with no clause cue at all comes back as one REQ span over the
    tokens after any leading fillers.
    """
    toks = surfaces(tokens)
    if hits is None:
        hits = rules.scan(toks)
    spans = _tagged_clauses(toks, hits, rules)
    if not spans:
        first = _leading_fillers(hits)
        if first < len(toks):
            spans = [ClauseSpan(REQ, first, len(toks))]
    return spans


def _has_alternative(hits: List[Hit], n: int, rules: RuleSet) -> bool:
    for h in hits:
        if h.kind != "alternative":
            continue
        if rules.head_position is HeadPosition.INITIAL:
            if h.start > 0 and h.end < n:
                return True
        elif h.start > 0 or h.end < n:
            return True
    return False


def classify(tokens: Sequence, rules: RuleSet) -> ClassificationResult:
    toks = surfaces(tokens)
    if not toks:
        raise EmptyUtterance("cannot classify an empty token sequence")
    hits = rules.scan(toks)
    kinds = {h.kind for h in hits}

    def names(*wanted):
        return tuple(h.name for h in hits if h.kind in wanted)

    if "prohibition" in kinds:
        clauses = _tagged_clauses(toks, hits, rules)
        ph = [c for c in clauses if c.tag == PH]
        req = [c for c in clauses if c.tag == REQ]
        if req:
            return ClassificationResult(
                SpeechActType.STRONG_REQUIREMENT,
                names("prohibition", *COMMAND_KINDS),
                tuple(clauses),
            )
        return ClassificationResult(SpeechActType.PROHIBITION, names("prohibition"), tuple(ph))
    if kinds & COMMAND_KINDS:
        return ClassificationResult(
            SpeechActType.REQUIREMENT,
            names(*COMMAND_KINDS),
            tuple(split_clauses(toks, rules, hits)),
        )
    if _has_alternative(hits, len(toks), rules) and kinds & {"question", "wh", "alternative_tag"}:
        return ClassificationResult(
            SpeechActType.ALTERNATIVE_QUESTION,
            names("alternative", "alternative_tag", "question", "wh"),
        )
    if "wh" in kinds:
        return ClassificationResult(SpeechActType.WH_QUESTION, names("wh"))
    if "question" in kinds:
        return ClassificationResult(SpeechActType.YES_NO_QUESTION, names("question"))
    if "politeness" in kinds:
        return ClassificationResult(
            SpeechActType.REQUIREMENT,
            names("politeness"),
            tuple(split_clauses(toks, rules, hits)),
        )
    return ClassificationResult(None)
