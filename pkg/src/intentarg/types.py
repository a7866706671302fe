"""Domain types: speech-act labels, referent notation, topics, corpus records."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .errors import InvalidLabel


class BroadIntent(enum.Enum):
    QUESTION = "question"
    COMMAND = "command"


class SpeechActType(enum.IntEnum):
    """The six directive subtypes. Integer values are the stable corpus codes."""

    YES_NO_QUESTION = 0
    ALTERNATIVE_QUESTION = 1
    WH_QUESTION = 2
    PROHIBITION = 3
    REQUIREMENT = 4
    STRONG_REQUIREMENT = 5

    @property
    def tag(self) -> str:
        return _LABEL_TAGS[self]

    @property
    def broad_intent(self) -> BroadIntent:
        return BroadIntent.QUESTION if self.value <= 2 else BroadIntent.COMMAND

    @property
    def is_question(self) -> bool:
        return self.broad_intent is BroadIntent.QUESTION


_LABEL_TAGS = {
    SpeechActType.YES_NO_QUESTION: "yesno",
    SpeechActType.ALTERNATIVE_QUESTION: "alternative",
    SpeechActType.WH_QUESTION: "wh",
    SpeechActType.PROHIBITION: "prohibition",
    SpeechActType.REQUIREMENT: "requirement",
    SpeechActType.STRONG_REQUIREMENT: "strong_requirement",
}
_TAG_LABELS = {tag: label for label, tag in _LABEL_TAGS.items()}


def label_code(label: SpeechActType) -> int:
    return int(label)


def label_from_code(code) -> SpeechActType:
    if isinstance(code, bool) or not isinstance(code, int) or not 0 <= code <= 5:
        raise InvalidLabel(code)
    return SpeechActType(code)


def label_from_tag(tag: str) -> SpeechActType:
    try:
        return _TAG_LABELS[tag]
    except KeyError:
        raise InvalidLabel(tag) from None


def parse_label(text: str) -> SpeechActType:
    """Accept either the integer code or the string tag."""
    text = text.strip()
    if text.lstrip("-").isdigit():
        return label_from_code(int(text))
    return label_from_tag(text)


def broad_intent(label: SpeechActType) -> BroadIntent:
    return label.broad_intent


class ReferentNotation(enum.Enum):
    SPEAKER_ONLY = "speaker"
    ADDRESSEE_ONLY = "addressee"
    BOTH = "both"
    NONE = "none"
    UNKNOWN = "unknown"

    @classmethod
    def from_tag(cls, tag: str) -> "ReferentNotation":
        try:
            return cls(tag)
        except ValueError:
            raise ValueError(f"unknown notation tag {tag!r}") from None


class Topic(enum.Enum):
    MAIL = "mail"
    SCHEDULE = "schedule"
    SMART_HOME = "smart_home"
    WEATHER = "weather"
    FREE = "free"


# augmentation weights for mail, schedule, smart home, weather, free topics
TOPIC_WEIGHTS = {
    Topic.MAIL: 1,
    Topic.SCHEDULE: 1,
    Topic.SMART_HOME: 1,
    Topic.WEATHER: 1,
    Topic.FREE: 4,
}


class Referent(enum.Enum):
    SPEAKER = "speaker"
    ADDRESSEE = "addressee"


def notation_for(referents, subject_drop: bool = False) -> ReferentNotation:
    """Map the set of referents found in an utterance to its notation tag."""
    referents = set(referents)
    if referents == {Referent.SPEAKER, Referent.ADDRESSEE}:
        return ReferentNotation.BOTH
    if referents == {Referent.SPEAKER}:
        return ReferentNotation.SPEAKER_ONLY
    if referents == {Referent.ADDRESSEE}:
        return ReferentNotation.ADDRESSEE_ONLY
    return ReferentNotation.UNKNOWN if subject_drop else ReferentNotation.NONE


class Head(enum.Enum):
    IF = "if"
    WHETHER_OR = "whether_or"
    NOMINAL = "nominal"
    TO = "to"
    NOT_TO = "not_to"

    @property
    def is_question(self) -> bool:
        return self in (Head.IF, Head.WHETHER_OR, Head.NOMINAL)


class HeadPosition(enum.Enum):
    INITIAL = "initial"
    FINAL = "final"


def allowed_heads(label: SpeechActType) -> frozenset:
    """Heads an argument may carry under ``label``.

    Alternative questions phrased around a wh-word take a nominal head
    ("the place hotter between hawaii and guam"), so they admit two heads.
    """
    return _ALLOWED_HEADS[label]


_ALLOWED_HEADS = {
    SpeechActType.YES_NO_QUESTION: frozenset({Head.IF}),
    SpeechActType.ALTERNATIVE_QUESTION: frozenset({Head.WHETHER_OR, Head.NOMINAL}),
    SpeechActType.WH_QUESTION: frozenset({Head.NOMINAL}),
    SpeechActType.PROHIBITION: frozenset({Head.NOT_TO}),
    SpeechActType.REQUIREMENT: frozenset({Head.TO}),
    SpeechActType.STRONG_REQUIREMENT: frozenset({Head.TO}),
}


def head_for(label: SpeechActType, wh_phrased: bool = False) -> Head:
    if label is SpeechActType.ALTERNATIVE_QUESTION:
        return Head.NOMINAL if wh_phrased else Head.WHETHER_OR
    (head,) = _ALLOWED_HEADS[label]
    return head


@dataclass(frozen=True)
class CorpusRecord:
    label: SpeechActType
    sentence: str
    argument: str
    notation: Optional[ReferentNotation] = None
    topic: Optional[Topic] = None


@dataclass(frozen=True)
class IntentArgument:
    """Structured core content of a directive.

    ``nominal`` is the head noun phrase for nominal heads (may be empty when
    the content itself is the noun phrase) and ``None`` otherwise.
    """

    head: Head
    content: tuple = ()
    head_position: HeadPosition = HeadPosition.INITIAL
    referents: frozenset = field(default_factory=frozenset)
    nominal: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "content", tuple(self.content))
        object.__setattr__(self, "referents", frozenset(self.referents))
        if self.head is Head.NOMINAL and self.nominal is None:
            object.__setattr__(self, "nominal", "")
