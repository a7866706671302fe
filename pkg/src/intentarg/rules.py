"""Language rule sets: cue lexicons, pronoun/politeness/deixis maps.

Cue entries are strings of space-separated token patterns:

* ``word``   matches the token exactly
* ``-suf``   matches any token ending in ``suf`` (agglutinative endings)
* ``pre-``   matches any token starting with ``pre``

A leading ``^`` anchors the cue to the clause-opening zone (only fillers,
politeness markers and frame cues seen so far in the clause); a trailing
``$`` anchors it to the last token of the utterance.
"""

from __future__ import annotations

import json
from functools import cached_property
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .textnorm import normalize
from .types import Head, HeadPosition, Referent


def _match_token(pattern: str, token: str) -> bool:
    if len(pattern) > 1 and pattern.startswith("-"):
        return token.endswith(pattern[1:])
    if len(pattern) > 1 and pattern.endswith("-"):
        return token.startswith(pattern[:-1])
    return token == pattern


@dataclass(frozen=True)
class Cue:
    text: str
    patterns: Tuple[str, ...]
    at_start: bool = False
    at_end: bool = False

    @classmethod
    def parse(cls, text: str) -> "Cue":
        body = text.strip()
        at_start = body.startswith("^")
        at_end = body.endswith("$")
        body = body.strip("^$").strip()
        patterns = tuple(body.split())
        if not patterns:
            raise ValueError(f"empty cue {text!r}")
        for p in patterns:
            bare = p.strip("-")
            if not bare or normalize(bare) != bare:
                raise ValueError(f"cue {text!r} is not normalized")
        return cls(text, patterns, at_start, at_end)

    def __len__(self):
        return len(self.patterns)

    def match(self, tokens: Sequence[str], pos: int, zone: bool) -> Optional[int]:
        end = pos + len(self.patterns)
        if end > len(tokens) or (self.at_start and not zone):
            return None
        if self.at_end and end != len(tokens):
            return None
        for p, tok in zip(self.patterns, tokens[pos:end]):
            if not _match_token(p, tok):
                return None
        return end


class WhEntry(NamedTuple):
    nominal: str
    link: Tuple[str, ...] = ()


class PronounEntry(NamedTuple):
    referent: Referent
    replacement: Tuple[str, ...]
    question_replacement: Tuple[str, ...]


# tie-break order among equally long cues at one position
KINDS = (
    "prohibition",
    "command_frame",
    "wh",
    "question",
    "alternative_tag",
    "alternative",
    "command_verb",
    "command_ending",
    "clause_ender",
    "politeness",
    "filler",
)
COMMAND_KINDS = frozenset({"command_frame", "command_verb", "command_ending"})
# kinds after which the clause-opening zone stays open
_OPENING = frozenset({"filler", "politeness", "question", "command_frame", "wh", "clause_ender"})


class Hit(NamedTuple):
    kind: str
    cue: Cue
    start: int
    end: int

    @property
    def name(self) -> str:
        return f"{self.kind}:{self.cue.text}"


@dataclass(frozen=True)
class AlternativeNominal:
    """How a wh-phrased alternative question is rewritten around its disjunction."""

    replace_cue: Optional[str] = None
    insert_before_left: Optional[str] = None


@dataclass(frozen=True)
class RuleSet:
    language: str = "und"
    head_position: HeadPosition = HeadPosition.INITIAL
    subject_drop: bool = False
    fillers: Tuple[Cue, ...] = ()
    politeness_markers: frozenset = frozenset()
    question_cues: Tuple[Cue, ...] = ()
    wh_cues: Tuple[Tuple[Cue, WhEntry], ...] = ()
    alternative_cues: Tuple[Cue, ...] = ()
    alternative_tags: Tuple[Cue, ...] = ()
    alternative_nominal: AlternativeNominal = AlternativeNominal()
    prohibition_cues: Tuple[Cue, ...] = ()
    command_frames: Tuple[Cue, ...] = ()
    command_verbs: Tuple[Cue, ...] = ()
    command_endings: Tuple[Cue, ...] = ()
    clause_enders: Tuple[Cue, ...] = ()
    pronoun_map: Dict[str, PronounEntry] = field(default_factory=dict)
    deictic_tokens: frozenset = frozenset()
    head_markers: Dict[Head, str] = field(default_factory=dict)
    default_nominal: str = ""
    final_endings: Tuple[Tuple[str, str], ...] = ()
    variant_frames: Dict[Head, Tuple[str, ...]] = field(default_factory=dict)
    variant_politeness: Tuple[str, ...] = ()
    frame_synonyms: Dict[str, Tuple[str, ...]] = field(default_factory=dict)
    # referent phrase -> surface pronouns (sentence-initial form first)
    variant_pronouns: Dict[Tuple[str, ...], Tuple[str, ...]] = field(default_factory=dict)
    wh_particles: frozenset = frozenset()

    def __hash__(self):
        return id(self)

    @classmethod
    def empty(cls) -> "RuleSet":
        return cls()

    def cues(self, kind: str) -> Tuple[Cue, ...]:
        if kind == "wh":
            return tuple(c for c, _ in self.wh_cues)
        if kind == "politeness":
            return self._politeness_cues
        return getattr(self, _KIND_FIELDS[kind])

    @cached_property
    def _politeness_cues(self) -> Tuple[Cue, ...]:
        return tuple(Cue(m, (m,)) for m in sorted(self.politeness_markers))

    @cached_property
    def _scan_table(self):
        return [(kind, self.cues(kind)) for kind in KINDS]

    def wh_entry(self, cue: Cue) -> WhEntry:
        for c, entry in self.wh_cues:
            if c is cue:
                return entry
        raise KeyError(cue.text)

    def nominal_phrases(self) -> List[str]:
        """Every nominal head the rule set can produce, longest first."""
        phrases = {e.nominal for _, e in self.wh_cues if e.nominal}
        if self.default_nominal:
            phrases.add(self.default_nominal)
        return sorted(phrases, key=lambda p: (-len(p.split()), p))

    def scan(self, tokens: Sequence[str]) -> List[Hit]:
        """Greedy left-to-right longest-match cue segmentation."""
        hits = []
        pos, zone = 0, True
        n = len(tokens)
        table = self._scan_table
        while pos < n:
            best = None
            for kind, cues in table:
                for cue in cues:
                    end = cue.match(tokens, pos, zone)
                    if end is not None and (best is None or end > best.end):
                        best = Hit(kind, cue, pos, end)
            if best is None:
                pos += 1
                zone = False
                continue
            hits.append(best)
            pos = best.end
            if best.kind == "prohibition":
                zone = self.head_position is HeadPosition.FINAL
            else:
                zone = best.kind in _OPENING
        return hits


_KIND_FIELDS = {
    "prohibition": "prohibition_cues",
    "command_frame": "command_frames",
    "question": "question_cues",
    "alternative_tag": "alternative_tags",
    "alternative": "alternative_cues",
    "command_verb": "command_verbs",
    "command_ending": "command_endings",
    "clause_ender": "clause_enders",
    "filler": "fillers",
}

BUILTIN_RULES = ("en-demo", "ko")


def _cues(items) -> Tuple[Cue, ...]:
    return tuple(Cue.parse(s) for s in items)


def _words(text: str) -> Tuple[str, ...]:
    return tuple(text.split())


def rules_from_dict(data: dict) -> RuleSet:
    pronouns = {}
    for surface, entry in data.get("pronoun_map", {}).items():
        if normalize(surface) != surface:
            raise ValueError(f"pronoun {surface!r} is not normalized")
        replacement = _words(entry["replacement"])
        pronouns[surface] = PronounEntry(
            Referent(entry["referent"]),
            replacement,
            _words(entry.get("question_replacement", entry["replacement"])),
        )
    referents = {e.referent for e in pronouns.values()}
    if pronouns and referents != {Referent.SPEAKER, Referent.ADDRESSEE}:
        raise ValueError("pronoun_map must cover both first- and second-person forms")

    wh = tuple(
        (Cue.parse(cue), WhEntry(spec.get("nominal", ""), _words(spec.get("link", ""))))
        for cue, spec in data.get("wh_cues", {}).items()
    )
    politeness = frozenset(data.get("politeness_markers", ()))
    for m in politeness:
        if normalize(m) != m or len(m.split()) != 1:
            raise ValueError(f"politeness marker {m!r} must be one normalized token")
    alt = data.get("alternative_nominal", {})
    endings = sorted(data.get("final_endings", {}).items(), key=lambda kv: (-len(kv[0]), kv[0]))
    return RuleSet(
        language=data.get("language", "und"),
        head_position=HeadPosition(data.get("head_position", "initial")),
        subject_drop=bool(data.get("subject_drop", False)),
        fillers=_cues(data.get("fillers", ())),
        politeness_markers=politeness,
        question_cues=_cues(data.get("question_cues", ())),
        wh_cues=wh,
        alternative_cues=_cues(data.get("alternative_cues", ())),
        alternative_tags=_cues(data.get("alternative_tags", ())),
        alternative_nominal=AlternativeNominal(alt.get("replace_cue"), alt.get("insert_before_left")),
        prohibition_cues=_cues(data.get("prohibition_cues", ())),
        command_frames=_cues(data.get("command_frames", ())),
        command_verbs=_cues(data.get("command_verbs", ())),
        command_endings=_cues(data.get("command_endings", ())),
        clause_enders=_cues(data.get("clause_enders", ())),
        pronoun_map=pronouns,
        deictic_tokens=frozenset(data.get("deictic_tokens", ())),
        head_markers={Head(k): v for k, v in data.get("head_markers", {}).items()},
        default_nominal=data.get("default_nominal", ""),
        final_endings=tuple(endings),
        variant_frames={Head(k): tuple(v) for k, v in data.get("variant_frames", {}).items()},
        variant_politeness=tuple(data.get("variant_politeness", ())),
        frame_synonyms={k: tuple(v) for k, v in data.get("frame_synonyms", {}).items()},
        variant_pronouns={_words(k): tuple(v) for k, v in data.get("variant_pronouns", {}).items()},
        wh_particles=frozenset(data.get("wh_particles", ())),
    )


def load_rules(source) -> RuleSet:
    """Load a rule set from a JSON file path or a builtin name (``en-demo``, ``ko``)."""
    if isinstance(source, RuleSet):
        return source
    name = str(source)
    if name in BUILTIN_RULES:
        text = resources.files("intentarg").joinpath(f"data/rules.{name}.json").read_text("utf-8")
    else:
        text = Path(name).read_text(encoding="utf-8")
    return rules_from_dict(json.loads(text))
