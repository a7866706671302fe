import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from intentarg.classifier import PH, REQ, ClauseSpan, classify, split_clauses
from intentarg.errors import MalformedStrongRequirement, NotADirective
from intentarg.extractor import (
    ExtractionConfig,
    extract,
    normalize_coreference,
    render,
    resolve_strong_requirement,
    split_head,
    strip_politeness,
)
from intentarg.rules import load_rules
from intentarg.textnorm import words
from intentarg.types import (
    Head,
    HeadPosition,
    IntentArgument,
    Referent,
    SpeechActType as T,
    allowed_heads,
)

EN = load_rules("en-demo")
KO = load_rules("ko")


def test_coreference_examples(en):
    assert normalize_coreference(["dont", "pick", "me", "up"], en) == (
        ["dont", "pick", "the", "speaker", "up"],
        frozenset({Referent.SPEAKER}),
    )
    assert normalize_coreference(["ask", "your", "wife"], en) == (
        ["ask", "ones", "wife"],
        frozenset({Referent.ADDRESSEE}),
    )
    assert normalize_coreference(["put", "the", "box", "there"], en) == (
        ["put", "the", "box", "there"],
        frozenset(),
    )


def test_coreference_keeps_third_person(en):
    toks = ["tell", "him", "that", "they", "left"]
    assert normalize_coreference(toks, en)[0] == toks


def test_strip_politeness(en):
    assert strip_politeness(["please", "dont", "tell", "my", "daddy"], en) == ["dont", "tell", "my", "daddy"]
    assert strip_politeness([], en) == []
    toks = ["please", "please", "go"]
    assert strip_politeness(toks, en) == [t for t in toks if t not in en.politeness_markers] == ["go"]


def test_resolve_strong_requirement(en, ko):
    toks = words("dont go outside just stay in the house")
    assert resolve_strong_requirement(split_clauses(toks, en), toks) == ["just", "stay", "in", "the", "house"]
    kt = "저번처럼 가지 말고 백화점 세일은 미리 가서 대기하렴".split()
    assert resolve_strong_requirement(split_clauses(kt, ko), kt) == "백화점 세일은 미리 가서 대기하렴".split()
    only = [ClauseSpan(REQ, 0, 3)]
    assert resolve_strong_requirement(only, ["ask", "your", "wife"]) == ["ask", "your", "wife"]
    with pytest.raises(MalformedStrongRequirement):
        resolve_strong_requirement([ClauseSpan(PH, 0, 2)], ["dont", "go"])


def _x(text, label, rules=EN):
    toks = text.split() if rules is KO else words(text)
    return extract(toks, label, ExtractionConfig(rules))


def test_wh_nominal_and_link():
    arg = _x("how many points you got", T.WH_QUESTION)
    assert arg.head is Head.NOMINAL and arg.nominal == "the number"
    assert arg.content[:2] == ("of", "points")
    assert ("the", "addressee", "got") == arg.content[-3:]


def test_alternative_with_wh_word():
    arg = _x("you know which is hotter in hawaii or guam", T.ALTERNATIVE_QUESTION)
    assert arg.head is Head.NOMINAL
    assert "between" in arg.content and "and" in arg.content and "or" not in arg.content


def test_alternative_drops_tail():
    arg = _x("you hungry or thirsty or both", T.ALTERNATIVE_QUESTION)
    assert arg.head is Head.WHETHER_OR
    assert arg.content == ("the", "addressee", "hungry", "or", "thirsty")


def test_yes_no_example():
    arg = _x("did i ever tell you about how", T.YES_NO_QUESTION)
    assert arg.head is Head.IF
    assert arg.referents == {Referent.SPEAKER, Referent.ADDRESSEE}
    assert render(arg, ExtractionConfig(EN)).startswith("if the speaker")


def test_prohibition_keeps_deixis():
    arg = _x("i i dont want to see you tomorrow", T.PROHIBITION)
    assert arg.head is Head.NOT_TO and arg.content[-1] == "tomorrow"


def test_korean_strong_requirement_renders_gold():
    arg = _x("저번처럼 가지 말고 백화점 세일은 미리 가서 대기하렴", T.STRONG_REQUIREMENT, KO)
    assert render(arg, ExtractionConfig(KO)) == "백화점 세일은 미리 가서 대기하기"


def test_non_directive_rejected(en):
    with pytest.raises(NotADirective):
        extract(["hello"], None, ExtractionConfig(en))


def test_render_examples(en, ko):
    init = ExtractionConfig(en)
    assert render(IntentArgument(Head.TO, ("ask", "ones", "wife")), init) == "to ask ones wife"
    final = ExtractionConfig(ko)
    arg = IntentArgument(Head.TO, ("백화점", "세일은", "미리", "가서", "대기하-"), HeadPosition.FINAL)
    assert render(arg, final) == "백화점 세일은 미리 가서 대기하기"
    assert render(IntentArgument(Head.IF, ()), init) == "if"


def test_korean_config_defaults_to_head_final(ko):
    assert ExtractionConfig(ko).head_position is HeadPosition.FINAL


SAMPLES = {
    T.YES_NO_QUESTION: "do you know if it rains today",
    T.ALTERNATIVE_QUESTION: "do you want tea or coffee",
    T.WH_QUESTION: "where should we go tomorrow",
    T.PROHIBITION: "dont open the window",
    T.REQUIREMENT: "please close the door",
    T.STRONG_REQUIREMENT: "dont wait just call me",
}


@pytest.mark.parametrize("label", list(T))
def test_head_label_consistency(en, label):
    toks = words(SAMPLES[label])
    assert classify(toks, en).label is label
    arg = extract(toks, label, ExtractionConfig(en))
    assert arg.head in allowed_heads(label)


_WORDS = ["the", "box", "rain", "house", "tomorrow", "there", "red", "now"]
_CUES = ["please", "just", "dont", "you", "your", "i", "my", "can you", "do you know if", "what", "or", "yeah"]


@given(st.lists(st.sampled_from(_WORDS + _CUES), min_size=1, max_size=10))
def test_outputs_have_no_pronouns_or_politeness(tokens):
    toks = " ".join(tokens).split()
    label = classify(toks, EN).label
    assume(label is not None)
    cfg = ExtractionConfig(EN)
    out = render(extract(toks, label, cfg), cfg).split()
    assert not set(out) & set(EN.pronoun_map)
    assert not set(out) & EN.politeness_markers


_FRAMES = ["{c}", "please {c}", "can you {c}", "you should {c}", "dont {c}", "do you know if {c}", "i wonder if {c}"]
_CONTENT = ["go", "there", "tomorrow", "now", "the", "box", "house", "later"]


@given(st.sampled_from(_FRAMES), st.lists(st.sampled_from(_CONTENT), min_size=1, max_size=6))
def test_deixis_preserved(frame, content):
    toks = frame.format(c=" ".join(content)).split()
    label = classify(toks, EN).label
    assume(label is not None)
    arg = extract(toks, label, ExtractionConfig(EN))
    for tok in content:
        if tok in EN.deictic_tokens:
            assert tok in arg.content


_EN_CONTENT = st.lists(st.sampled_from(["box", "rain", "house", "tomorrow", "algebra", "red"]), max_size=5)
_KO_CONTENT = st.lists(st.sampled_from(["비가", "내일", "집에", "백화점", "미리", "가서"]), max_size=4)


@given(st.sampled_from(list(Head)), _EN_CONTENT, st.sampled_from(EN.nominal_phrases()))
def test_render_parse_round_trip_initial(head, content, nominal):
    arg = IntentArgument(head, content, HeadPosition.INITIAL, nominal=nominal if head is Head.NOMINAL else None)
    parsed = split_head(render(arg, ExtractionConfig(EN)), EN)
    assert parsed.head is head
    assert parsed.content == tuple(content)


@given(st.sampled_from(list(Head)), _KO_CONTENT, st.sampled_from(["", "가-", "오-", "대기하-"]))
def test_render_parse_round_trip_final(head, content, stem):
    content = content + ([stem] if stem else [])
    assume(content)
    nominal = "것" if head is Head.NOMINAL else None
    if head is Head.NOMINAL and stem:
        return  # a bare stem cannot precede a nominal head
    arg = IntentArgument(head, content, HeadPosition.FINAL, nominal=nominal)
    parsed = split_head(render(arg, ExtractionConfig(KO)), KO)
    assert parsed.head is head
    assert parsed.content == tuple(content)
