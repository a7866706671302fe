"""Speech-act typing and intent-argument extraction for directive utterances."""

from .classifier import ClassificationResult, classify, split_clauses
from .extractor import ExtractionConfig, extract, render, split_head
from .rules import RuleSet, load_rules
from .textnorm import normalize, tokenize, words
from .types import (
    BroadIntent,
    CorpusRecord,
    Head,
    HeadPosition,
    IntentArgument,
    ReferentNotation,
    SpeechActType,
    Topic,
)

__version__ = "0.1.0"

__all__ = [
    "BroadIntent",
    "ClassificationResult",
    "CorpusRecord",
    "ExtractionConfig",
    "Head",
    "HeadPosition",
    "IntentArgument",
    "ReferentNotation",
    "RuleSet",
    "SpeechActType",
    "Topic",
    "classify",
    "extract",
    "load_rules",
    "normalize",
    "render",
    "split_clauses",
    "split_head",
    "tokenize",
    "words",
]
