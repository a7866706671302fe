import pytest
from hypothesis import given
from hypothesis import strategies as st

from intentarg.classifier import PH, REQ, ClauseSpan, classify, split_clauses
from intentarg.errors import EmptyUtterance
from intentarg.rules import KINDS, RuleSet
from intentarg.textnorm import words
from intentarg.types import SpeechActType as T


@pytest.mark.parametrize(
    "text,label",
    [
        ("did i ever tell you about how", T.YES_NO_QUESTION),
        ("you hungry or thirsty or both", T.ALTERNATIVE_QUESTION),
        ("dont go outside just stay in the house", T.STRONG_REQUIREMENT),
        ("i suggest that you ask your wife", T.REQUIREMENT),
        ("please dont tell my daddy", T.PROHIBITION),
        ("yeah but dont pick me up", T.PROHIBITION),
        ("how many points you got", T.WH_QUESTION),
        ("put your right foot there", T.REQUIREMENT),
        ("the weather is nice today", None),
    ],
)
def test_english_examples(en, text, label):
    result = classify(words(text), en)
    assert result.label is label
    assert bool(result.trace) == (label is not None)


@pytest.mark.parametrize(
    "text,label",
    [
        ("저번처럼 가지 말고 백화점 세일은 미리 가서 대기하렴", T.STRONG_REQUIREMENT),
        ("박사 졸업과 결혼 준비를 비교한다면 어떤게 더 지옥같아", T.ALTERNATIVE_QUESTION),
        ("몇 도 기준으로 열대야라고 해", T.WH_QUESTION),
        ("내일 비가 오니", T.YES_NO_QUESTION),
        ("거기 가지마", T.PROHIBITION),
    ],
)
def test_korean_examples(ko, text, label):
    assert classify(text.split(), ko).label is label


def test_strong_requirement_spans(en):
    toks = words("dont go outside just stay in the house")
    result = classify(toks, en)
    assert result.clause_spans == (ClauseSpan(PH, 0, 3), ClauseSpan(REQ, 3, 8))
    assert toks[3:8] == ["just", "stay", "in", "the", "house"]


def test_split_clauses_examples(en):
    assert split_clauses(words("yeah but dont pick me up"), en) == [ClauseSpan(PH, 2, 6)]
    assert split_clauses(words("ask your wife"), en) == [ClauseSpan(REQ, 0, 3)]


def test_korean_strong_requirement_spans(ko):
    toks = "저번처럼 가지 말고 백화점 세일은 미리 가서 대기하렴".split()
    result = classify(toks, ko)
    tags = [s.tag for s in result.clause_spans]
    assert tags == [PH, REQ]
    req = result.clause_spans[1]
    assert toks[req.start:req.end] == "백화점 세일은 미리 가서 대기하렴".split()


def test_empty_utterance(en):
    with pytest.raises(EmptyUtterance):
        classify([], en)


def _vocab(rules):
    pieces = {"the", "house", "tomorrow", "there", "rain", "box", "go", "eat"}
    for kind in KINDS:
        for cue in rules.cues(kind):
            pieces.update(p for p in cue.patterns if not p.startswith("-") and not p.endswith("-"))
    pieces.update(rules.pronoun_map)
    return sorted(pieces)


_EN_VOCAB = _vocab(__import__("intentarg.rules", fromlist=["load_rules"]).load_rules("en-demo"))


@given(st.lists(st.sampled_from(_EN_VOCAB), min_size=1, max_size=12))
def test_determinism_and_priority_soundness(en, tokens):
    first = classify(tokens, en)
    assert classify(list(tokens), en) == first
    tags = [s.tag for s in first.clause_spans]
    if first.label is T.STRONG_REQUIREMENT:
        assert PH in tags and REQ in tags
    if first.label is T.PROHIBITION:
        assert REQ not in tags
    if first.label is not None:
        assert first.trace
    known = {f"{kind}:{c.text}" for kind in KINDS for c in en.cues(kind)}
    assert set(first.trace) <= known


@given(st.lists(st.sampled_from(_EN_VOCAB), min_size=1, max_size=12))
def test_spans_are_ordered_and_disjoint(en, tokens):
    spans = split_clauses(tokens, en)
    last = 0
    for s in spans:
        assert last <= s.start < s.end <= len(tokens)
        last = s.end


@given(st.lists(st.text(min_size=1).filter(lambda s: s.strip() == s and " " not in s), min_size=1, max_size=8))
def test_empty_rules_are_closed_world(tokens):
    assert classify(tokens, RuleSet.empty()).label is None
