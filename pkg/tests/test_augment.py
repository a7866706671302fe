import dataclasses
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from intentarg.augment import (
    apportion,
    enumerate_variants,
    generate_variants,
    max_variants,
    parse_argument,
    plan_augmentation,
    roundtrip,
)
from intentarg.corpus import stats
from intentarg.errors import InvalidArgument, NothingToPlan, VariantExhausted
from intentarg.rules import load_rules
from intentarg.types import TOPIC_WEIGHTS, Head, HeadPosition, IntentArgument, SpeechActType as T, Topic

from oracles import best_apportionment

EN = load_rules("en-demo")
KO = load_rules("ko")


def test_apportion_examples():
    assert apportion(400, TOPIC_WEIGHTS) == {
        Topic.MAIL: 50, Topic.SCHEDULE: 50, Topic.SMART_HOME: 50, Topic.WEATHER: 50, Topic.FREE: 200,
    }
    assert set(apportion(0, TOPIC_WEIGHTS).values()) == {0}


@given(
    st.integers(0, 2000),
    st.lists(st.integers(1, 9), min_size=1, max_size=5),
)
def test_apportion_matches_search_and_bounds(total, ws):
    weights = {i: w for i, w in enumerate(ws)}
    alloc = apportion(total, weights)
    assert sum(alloc.values()) == total
    for k, w in weights.items():
        assert abs(alloc[k] - Fraction(total * w, sum(ws))) < 1
    assert alloc == best_apportionment(total, weights)


def test_plan_totals():
    quotas = {T.ALTERNATIVE_QUESTION: 400, T.PROHIBITION: 400, T.STRONG_REQUIREMENT: 400, T.WH_QUESTION: 800}
    plan = plan_augmentation(stats([]), quotas, TOPIC_WEIGHTS, 10)
    assert plan.total_arguments == 2000
    assert plan.total_pairs == 20000
    for label in (T.ALTERNATIVE_QUESTION, T.PROHIBITION, T.STRONG_REQUIREMENT):
        assert [plan.allocation[(label, t)] for t in Topic] == [50, 50, 50, 50, 200]
    assert plan.projected()[T.WH_QUESTION] == 8000


def test_plan_errors():
    with pytest.raises(NothingToPlan):
        plan_augmentation(None, {})
    with pytest.raises(ValueError):
        plan_augmentation(None, {T.WH_QUESTION: -1})
    plan = plan_augmentation(None, {T.WH_QUESTION: 0})
    assert set(plan.allocation.values()) == {0}


def test_nominal_example():
    arg = parse_argument("the most important concept in algebra", EN)
    assert arg.head is Head.NOMINAL
    out = generate_variants(arg, 4, EN, seed=1)
    assert len(set(out)) == 4
    assert all("the most important concept in algebra" in v for v in out)
    assert all(roundtrip(v, arg, EN) for v in out)


def test_single_variant_is_stable():
    arg = parse_argument("to call the police", EN)
    assert generate_variants(arg, 1, EN, seed=5) == generate_variants(arg, 1, EN, seed=5)


def _by_hand(frames, synonyms, politeness, content):
    """Spell out the operator product explicitly."""
    out = []
    for frame in frames:
        spellings = [frame]
        for word, alts in synonyms.items():
            spellings += [s.replace(word, a) for s in spellings for a in alts if word in s.split()]
        for spelled in spellings:
            base = spelled.replace("{c}", content)
            out.append(base)
            for marker in politeness:
                out.append(f"{marker} {base}")
                out.append(f"{base} {marker}")
    return sorted(set(out))


def test_exhaustion_matches_enumeration():
    frames = ("can you {c}", "i suggest you {c}")
    synonyms = {"can": ("could",), "suggest": ("recommend",)}
    rules = dataclasses.replace(
        EN,
        variant_frames={Head.TO: frames},
        frame_synonyms=synonyms,
        variant_politeness=("please",),
    )
    arg = parse_argument("to close the box", rules)
    expected = _by_hand(frames, synonyms, ("please",), "close the box")
    assert sorted(enumerate_variants(arg, rules)) == expected
    assert max_variants(arg, rules) == len(expected) == 12
    assert sorted(generate_variants(arg, 12, rules, seed=0)) == expected
    with pytest.raises(VariantExhausted) as exc:
        generate_variants(arg, 13, rules, seed=0)
    assert exc.value.maximum == 12


def test_wh_particles_rejected():
    arg = IntentArgument(Head.NOMINAL, ("what", "the", "addressee", "did"), nominal="the thing")
    with pytest.raises(InvalidArgument):
        generate_variants(arg, 1, EN)
    with pytest.raises(InvalidArgument):
        generate_variants(IntentArgument(Head.TO, ()), 1, EN)


def test_n_must_be_positive():
    with pytest.raises(ValueError):
        generate_variants(parse_argument("to go", EN), 0, EN)


_EN_PIECES = ["the box", "rain", "the house", "tomorrow", "there", "the speaker", "the addressee",
              "the speakers", "algebra", "red", "now", "the thing", "ones"]
_KO_PIECES = ["비가", "내일", "집에", "백화점", "미리", "거기", "화자를", "청자가", "화자의"]


@given(st.sampled_from(list(Head)), st.lists(st.sampled_from(_EN_PIECES), min_size=1, max_size=5), st.integers(0, 2**32))
def test_round_trip_english(head, pieces, seed):
    if head.is_question and "ones" in pieces:
        pieces = [p for p in pieces if p != "ones"] or ["rain"]
    arg = IntentArgument(head, " ".join(pieces).split(), HeadPosition.INITIAL)
    pool = enumerate_variants(arg, EN)
    assert pool
    picked = generate_variants(arg, min(len(pool), 5), EN, seed)
    assert len(set(picked)) == len(picked)
    for v in pool:
        assert roundtrip(v, arg, EN), v


@given(
    st.sampled_from(list(Head)),
    st.lists(st.sampled_from(_KO_PIECES), min_size=1, max_size=4),
    st.sampled_from(["가-", "오-", "만나-", "대기하-", "기다리-"]),
)
def test_round_trip_korean(head, pieces, stem):
    content = pieces if head is Head.NOMINAL else pieces + [stem]
    arg = IntentArgument(head, content, HeadPosition.FINAL, nominal="" if head is Head.NOMINAL else None)
    pool = enumerate_variants(arg, KO)
    assert pool
    for v in pool:
        assert roundtrip(v, arg, KO), v


def test_determinism_under_seed():
    arg = parse_argument("to go there tomorrow", EN)
    a = generate_variants(arg, 10, EN, seed=99)
    assert a == generate_variants(arg, 10, EN, seed=99)
    assert a != generate_variants(arg, 10, EN, seed=100)
