"""Class-imbalance planning and a template-driven variant generator."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .classifier import classify
from .corpus import CorpusStats, seeded_permutation
from .errors import InvalidArgument, NothingToPlan, VariantExhausted
from .extractor import STEM, ExtractionConfig, extract, split_head
from .rules import RuleSet
from .textnorm import normalize
from .types import (
    TOPIC_WEIGHTS,
    Head,
    HeadPosition,
    IntentArgument,
    SpeechActType,
    Topic,
)


def apportion(total: int, weights: Mapping) -> Dict:
    """Largest-remainder apportionment; ties go to the earlier key."""
    if total < 0:
        raise ValueError(f"quota must be non-negative, got {total}")
    keys = list(weights)
    if not keys or any(weights[k] <= 0 for k in keys):
        raise ValueError("weights must be positive")
    weight_sum = sum(weights[k] for k in keys)
    shares = {k: Fraction(total * weights[k], weight_sum) for k in keys}
    alloc = {k: int(shares[k]) for k in keys}
    left = total - sum(alloc.values())
    order = sorted(range(len(keys)), key=lambda i: (-(shares[keys[i]] - alloc[keys[i]]), i))
    for i in order[:left]:
        alloc[keys[i]] += 1
    return alloc


@dataclass(frozen=True)
class AugmentationPlan:
    quotas: Dict[SpeechActType, int]
    allocation: Dict[Tuple[SpeechActType, Topic], int]
    variants_per_argument: int
    current: Dict[SpeechActType, int] = field(default_factory=dict)

    @property
    def total_arguments(self) -> int:
        return sum(self.quotas.values())

    @property
    def total_pairs(self) -> int:
        return self.total_arguments * self.variants_per_argument

    def projected(self) -> Dict[SpeechActType, int]:
        """Per-type counts after the planned pairs are added."""
        return {
            t: self.current.get(t, 0) + self.quotas.get(t, 0) * self.variants_per_argument
            for t in SpeechActType
        }

    def as_dict(self) -> dict:
        return {
            "variants_per_argument": self.variants_per_argument,
            "total_arguments": self.total_arguments,
            "total_pairs": self.total_pairs,
            "quotas": {t.tag: q for t, q in self.quotas.items()},
            "allocation": {
                t.tag: {topic.value: self.allocation[(t, topic)] for topic in Topic}
                for t in self.quotas
            },
            "projected": {t.tag: n for t, n in self.projected().items()},
        }


def plan_augmentation(
    current: Optional[CorpusStats],
    quotas: Mapping[SpeechActType, int],
    weights: Mapping[Topic, int] = TOPIC_WEIGHTS,
    variants_per_argument: int = 10,
) -> AugmentationPlan:
    if not quotas:
        raise NothingToPlan("no argument quotas given")
    if variants_per_argument < 1:
        raise ValueError("variants_per_argument must be at least 1")
    ordered = {t: int(quotas[t]) for t in SpeechActType if t in quotas}
    allocation = {}
    for label, quota in ordered.items():
        for topic, n in apportion(quota, weights).items():
            allocation[(label, topic)] = n
    counts = dict(current.counts) if current is not None else {}
    return AugmentationPlan(ordered, allocation, variants_per_argument, counts)


# -- variant generation --------------------------------------------------------

def parse_argument(text: str, rules: RuleSet, position: Optional[HeadPosition] = None) -> IntentArgument:
    """Read a rendered argument back into structure (head, nominal, content)."""
    position = position or rules.head_position
    parsed = split_head(normalize(text), rules, position)
    return IntentArgument(parsed.head, parsed.content, position, frozenset(), parsed.nominal)


def _surface_content(arg: IntentArgument) -> List[str]:
    if arg.head is not Head.NOMINAL:
        return list(arg.content)
    nominal = arg.nominal.split() if arg.nominal else []
    if arg.head_position is HeadPosition.INITIAL:
        return nominal + list(arg.content)
    return list(arg.content) + nominal


def _restore_pronouns(tokens: List[str], rules: RuleSet, question: bool) -> List[str]:
    keys = sorted(rules.variant_pronouns, key=len, reverse=True)
    out: List[str] = []
    i = 0
    while i < len(tokens):
        for key in keys:
            if tuple(tokens[i:i + len(key)]) != key:
                continue
            forms = rules.variant_pronouns[key]
            preferred = [forms[0], *forms[1:]] if i == 0 else [*forms[::-1]]
            chosen = None
            for form in preferred:
                entry = rules.pronoun_map.get(form)
                back = entry and (entry.question_replacement if question else entry.replacement)
                if back == key:
                    chosen = form
                    break
            if chosen is not None:
                out.append(chosen)
                i += len(key)
                break
        else:
            out.append(tokens[i])
            i += 1
    return out


def _frames(head: Head, rules: RuleSet) -> Tuple[str, ...]:
    frames = rules.variant_frames.get(head)
    if not frames and head is Head.WHETHER_OR:
        frames = rules.variant_frames.get(Head.IF, ())
    return tuple(frames or ())


def _frame_choices(template: str, rules: RuleSet) -> List[str]:
    """Template spellings under every frame-token synonym combination."""
    slots = []
    for tok in template.split(" "):
        if "{c}" in tok:
            slots.append((tok,))
        else:
            slots.append((tok, *rules.frame_synonyms.get(tok, ())))
    return [" ".join(combo) for combo in itertools.product(*slots)]


def _scrambles(tokens: List[str], rules: RuleSet, position: HeadPosition) -> List[List[str]]:
    """Identity plus each single move of a deictic word to the free edge."""
    out = [tokens]
    seen = {tuple(tokens)}
    for i, tok in enumerate(tokens):
        if tok not in rules.deictic_tokens:
            continue
        rest = tokens[:i] + tokens[i + 1:]
        if position is HeadPosition.INITIAL:
            moved = rest + [tok]
        elif i == len(tokens) - 1:
            continue  # the final word carries the verb stem
        else:
            moved = [tok] + rest
        if tuple(moved) not in seen:
            seen.add(tuple(moved))
            out.append(moved)
    return out


def _fill(template: str, content: List[str]) -> Optional[Tuple[List[str], int]]:
    """Fill ``{c}``; returns tokens and the index of the last content token."""
    before, after = template.split("{c}", 1)
    pre = before.split()
    attached = bool(after) and not after[0].isspace()
    post = after.split()
    stemmed = bool(content) and content[-1].endswith(STEM)
    if attached != stemmed:
        return None
    body = list(content)
    if attached:
        body[-1] = body[-1][:-1] + post[0]
        post = post[1:]
    return pre + body + post, len(pre) + len(body) - 1


def _politeness(tokens: List[str], last: int, option, position: HeadPosition) -> List[str]:
    if option is None:
        return tokens
    marker, where = option
    if where == "start":
        return [marker] + tokens
    if position is HeadPosition.INITIAL:
        return tokens + [marker]
    return tokens[:last] + [marker] + tokens[last:]


def check_argument(arg: IntentArgument, rules: RuleSet) -> None:
    if not _surface_content(arg):
        raise InvalidArgument("argument has no content")
    if arg.head is Head.NOMINAL:
        found = [t for t in _surface_content(arg) if t in rules.wh_particles]
        if found:
            raise InvalidArgument("nominal argument exposes wh-particles: " + ", ".join(found))


def enumerate_variants(arg: IntentArgument, rules: RuleSet) -> List[str]:
    """Every distinct surface variant in a fixed enumeration order."""
    check_argument(arg, rules)
    position = arg.head_position
    content = _restore_pronouns(_surface_content(arg), rules, question=arg.head.is_question)
    polite = [None] + [(m, w) for m in rules.variant_politeness for w in ("start", "inner")]
    seen = {}
    for template in _frames(arg.head, rules):
        for spelled in _frame_choices(template, rules):
            for body in _scrambles(content, rules, position):
                filled = _fill(spelled, body)
                if filled is None:
                    continue
                tokens, last = filled
                for option in polite:
                    text = " ".join(_politeness(tokens, last, option, position))
                    seen.setdefault(text, None)
    return list(seen)


def max_variants(arg: IntentArgument, rules: RuleSet) -> int:
    return len(enumerate_variants(arg, rules))


def generate_variants(arg: IntentArgument, n: int, rules: RuleSet, seed: int = 0) -> List[str]:
    """``n`` distinct sentences for ``arg``, chosen by a seeded shuffle."""
    if n < 1:
        raise ValueError("n must be at least 1")
    pool = enumerate_variants(arg, rules)
    if n > len(pool):
        raise VariantExhausted(n, len(pool))
    order = seeded_permutation(len(pool), seed)
    return [pool[i] for i in order[:n]]


def argument_tokens(arg: IntentArgument, frame_nominal: bool = False) -> Counter:
    """Content multiset used for round-trip comparison.

    A nominal that came from the wh-frame (``frame_nominal``) is frame
    material, not content.
    """
    if arg.head is Head.NOMINAL and frame_nominal:
        return Counter(arg.content)
    return Counter(_surface_content(arg))


def roundtrip(variant: str, source: IntentArgument, rules: RuleSet) -> bool:
    """Does ``variant`` re-classify and re-extract to ``source``?"""
    tokens = normalize(variant).split()
    result = classify(tokens, rules)
    if result.label is None or result.label.is_question != source.head.is_question:
        return False
    got = extract(tokens, result.label, ExtractionConfig(rules, source.head_position))
    return argument_tokens(got, frame_nominal=True) == argument_tokens(source)
