"""Turn a classified directive into its intent argument and render it.

The extractor only marks, replaces and deletes tokens; it never conjugates.
Gold arguments that inflect verbs ("did i ever tell" -> "the speaker told")
are matched by content-token overlap, not string equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .classifier import PH, REQ, ClauseSpan, split_clauses
from .errors import MalformedStrongRequirement, NotADirective
from .rules import Hit, RuleSet
from .textnorm import surfaces
from .types import (
    Head,
    HeadPosition,
    IntentArgument,
    SpeechActType,
    head_for,
    notation_for,
)

DEFAULT_MARKERS = {
    Head.IF: "if",
    Head.WHETHER_OR: "whether",
    Head.TO: "to",
    Head.NOT_TO: "not to",
}
STEM = "-"


@dataclass(frozen=True)
class ExtractionConfig:
    rules: RuleSet
    head_position: Optional[HeadPosition] = None
    keep_notation: bool = True

    def __post_init__(self):
        if self.head_position is None:
            object.__setattr__(self, "head_position", self.rules.head_position)


def normalize_coreference(tokens: Sequence, rules: RuleSet, *, question: bool = False):
    """Replace first/second-person pronouns with referent phrases.

    Returns ``(tokens, referents)``.  Third-person pronouns and other
    anaphora are left alone.
    """
    out: List[str] = []
    referents = set()
    for tok in surfaces(tokens):
        entry = rules.pronoun_map.get(tok)
        if entry is None:
            out.append(tok)
            continue
        referents.add(entry.referent)
        out.extend(entry.question_replacement if question else entry.replacement)
    return out, frozenset(referents)


def strip_politeness(tokens: Sequence, rules: RuleSet) -> List[str]:
    return [t for t in surfaces(tokens) if t not in rules.politeness_markers]


def resolve_strong_requirement(spans: Sequence[ClauseSpan], tokens: Sequence) -> List[str]:
    """Keep only the requirement clause(s); the prohibition is not core content."""
    toks = surfaces(tokens)
    req = [s for s in spans if s.tag == REQ]
    if not req:
        raise MalformedStrongRequirement("strong requirement without a REQ clause")
    out: List[str] = []
    for span in req:
        out.extend(toks[span.start:span.end])
    return out


def _bound_suffix(h: Hit) -> bool:
    """A one-token suffix cue is an ending glued to a content word."""
    pats = h.cue.patterns
    return len(pats) == 1 and len(pats[0]) > 1 and pats[0].startswith(STEM)


def _drop(tokens: List[str], hits: List[Hit], kinds, lo: int = 0, hi: Optional[int] = None) -> List[Tuple[int, str]]:
    """Indexed tokens of ``[lo, hi)`` minus those covered by hits of ``kinds``
    and minus leading fillers."""
    hi = len(tokens) if hi is None else hi
    covered = set()
    fillers = set()
    for h in hits:
        if h.kind in kinds and not _bound_suffix(h):
            covered.update(range(h.start, h.end))
        elif h.kind == "filler":
            fillers.update(range(h.start, h.end))
    kept = [(i, tokens[i]) for i in range(lo, hi) if i not in covered]
    while kept and kept[0][0] in fillers:
        kept.pop(0)
    return kept


def _stem_last(content: List[str], rules: RuleSet) -> List[str]:
    """Cut a sentence-final ending off the last token, leaving ``stem-``."""
    if not content or content[-1].endswith(STEM):
        return content
    last = content[-1]
    for ending, stem in rules.final_endings:
        if last.endswith(ending) and len(last) > len(ending):
            return content[:-1] + [last[: len(last) - len(ending)] + stem + STEM]
    return content


def _requirement_content(tokens: List[str], rules: RuleSet) -> List[str]:
    hits = rules.scan(tokens)
    return [t for _, t in _drop(tokens, hits, {"command_frame", "politeness"})]


def _prohibition_content(tokens: List[str], hits: List[Hit], rules: RuleSet) -> List[str]:
    spans = [s for s in split_clauses(tokens, rules, hits) if s.tag == PH]
    span = spans[0] if spans else ClauseSpan(PH, 0, len(tokens))
    cue = next((h for h in hits if h.kind == "prohibition" and span.start <= h.start < span.end), None)
    if cue is None:
        return [t for _, t in _drop(tokens, hits, {"politeness"}, span.start, span.end)]
    if rules.head_position is HeadPosition.INITIAL:
        return [t for _, t in _drop(tokens, hits, {"politeness"}, cue.end, span.end)]
    content = [t for _, t in _drop(tokens, hits, {"politeness"}, span.start, cue.start)]
    first = cue.cue.patterns[0]
    if first.startswith("-") and len(first) > 1:
        # merged form such as "가지마": the verb stem lives inside the cue token
        tok = tokens[cue.start]
        stem = tok[: len(tok) - len(first) + 1]
        if stem:
            content.append(stem + STEM)
    return content


def _alternative_nominal(indexed: List[Tuple[int, str]], hits: List[Hit], rules: RuleSet) -> List[str]:
    alt_at = {h.start: h for h in hits if h.kind == "alternative"}
    spec = rules.alternative_nominal
    out: List[str] = []
    for i, tok in indexed:
        if i in alt_at:
            if spec.insert_before_left and out:
                out.insert(len(out) - 1, spec.insert_before_left)
            if spec.replace_cue:
                out.append(spec.replace_cue)
                continue
        out.append(tok)
    return out


def extract(tokens: Sequence, label: Optional[SpeechActType], cfg: ExtractionConfig) -> IntentArgument:
    if label is None:
        raise NotADirective("non-directive utterances have no intent argument")
    rules = cfg.rules
    toks = surfaces(tokens)
    hits = rules.scan(toks)
    nominal = None
    wh = next((h for h in hits if h.kind == "wh"), None)
    stem = False

    if label is SpeechActType.STRONG_REQUIREMENT:
        req = resolve_strong_requirement(split_clauses(toks, rules, hits), toks)
        content = _requirement_content(req, rules)
        stem = True
    elif label is SpeechActType.REQUIREMENT:
        content = _requirement_content(toks, rules)
        stem = True
    elif label is SpeechActType.PROHIBITION:
        content = _prohibition_content(toks, hits, rules)
        stem = True
    elif label is SpeechActType.YES_NO_QUESTION:
        content = [t for _, t in _drop(toks, hits, {"question", "politeness"})]
        stem = True
    elif label is SpeechActType.ALTERNATIVE_QUESTION and wh is None:
        content = [t for _, t in _drop(toks, hits, {"question", "politeness", "alternative_tag"})]
        stem = True
    else:
        # wh-questions, and alternative questions phrased around a wh-word
        entry = rules.wh_entry(wh.cue) if wh is not None else None
        nominal = entry.nominal if entry is not None else rules.default_nominal
        link = list(entry.link) if entry is not None else []
        indexed = _drop(toks, hits, {"wh", "question", "politeness", "alternative_tag"})
        if label is SpeechActType.ALTERNATIVE_QUESTION:
            body = _alternative_nominal(indexed, hits, rules)
        else:
            body = [t for _, t in indexed]
        content = link + body

    head = head_for(label, wh_phrased=wh is not None)
    content, referents = normalize_coreference(content, rules, question=label.is_question)
    if stem and rules.head_position is HeadPosition.FINAL:
        content = _stem_last(content, rules)
    return IntentArgument(head, content, cfg.head_position, referents, nominal)


def notation(arg: IntentArgument, rules: RuleSet):
    return notation_for(arg.referents, subject_drop=rules.subject_drop)


def _marker(head: Head, rules: RuleSet) -> str:
    return rules.head_markers.get(head) or DEFAULT_MARKERS[head]


def render(arg: IntentArgument, cfg: ExtractionConfig) -> str:
    rules = cfg.rules
    content = list(arg.content)
    if arg.head is Head.NOMINAL:
        head = arg.nominal.split() if arg.nominal else []
        if arg.head_position is HeadPosition.INITIAL:
            parts = head + content
        else:
            parts = content + head
        return " ".join(_unstem(parts))
    marker = _marker(arg.head, rules)
    if arg.head_position is HeadPosition.INITIAL:
        return " ".join(_unstem(marker.lstrip(STEM).split() + content))
    body = marker[1:].split() if marker.startswith(STEM) else marker.split()
    if marker.startswith(STEM) and content and content[-1].endswith(STEM):
        parts = content[:-1] + [content[-1][:-1] + body[0]] + body[1:]
    else:
        parts = content + body
    return " ".join(_unstem(parts))


def _unstem(parts: List[str]) -> List[str]:
    return [p[:-1] if len(p) > 1 and p.endswith(STEM) else p for p in parts]


class ParsedArgument(NamedTuple):
    head: Head
    nominal: Optional[str]
    content: Tuple[str, ...]


def split_head(text: str, rules: RuleSet, position: Optional[HeadPosition] = None) -> ParsedArgument:
    """Recover the head marker of a rendered argument from its position."""
    position = position or rules.head_position
    toks = text.split()
    markers = sorted(
        ((h, _marker(h, rules)) for h in DEFAULT_MARKERS),
        key=lambda hm: (-len(hm[1].split()), -len(hm[1])),
    )
    if position is HeadPosition.INITIAL:
        for head, marker in markers:
            m = marker.lstrip(STEM).split()
            if toks[: len(m)] == m:
                return ParsedArgument(head, None, tuple(toks[len(m):]))
        for phrase in rules.nominal_phrases():
            p = phrase.split()
            if toks[: len(p)] == p:
                return ParsedArgument(Head.NOMINAL, phrase, tuple(toks[len(p):]))
        return ParsedArgument(Head.NOMINAL, "", tuple(toks))

    for head, marker in markers:
        if marker.startswith(STEM):
            body = marker[1:].split()
            k = len(body)
            if len(toks) >= k and toks[len(toks) - k + 1:] == body[1:]:
                anchor = toks[len(toks) - k]
                if anchor.endswith(body[0]) and len(anchor) > len(body[0]):
                    stem = anchor[: len(anchor) - len(body[0])] + STEM
                    return ParsedArgument(head, None, tuple(toks[: len(toks) - k]) + (stem,))
        else:
            body = marker.split()
            k = len(body)
        if toks[len(toks) - k:] == body and len(toks) >= k:
            return ParsedArgument(head, None, tuple(toks[: len(toks) - k]))
    for phrase in rules.nominal_phrases():
        p = phrase.split()
        if len(toks) >= len(p) and toks[len(toks) - len(p):] == p:
            return ParsedArgument(Head.NOMINAL, phrase, tuple(toks[: len(toks) - len(p)]))
    return ParsedArgument(Head.NOMINAL, "", tuple(toks))


def content_tokens(text: str, rules: RuleSet, position: Optional[HeadPosition] = None) -> Tuple[str, ...]:
    return split_head(text, rules, position).content
