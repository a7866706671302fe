"""Text normalization and tokenization with pluggable analyzer adapters."""

from __future__ import annotations

import threading
import unicodedata
from dataclasses import dataclass
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence

from .errors import AnalyzerUnavailable

# fixed strip set; typographic quotes are included so transcripts copied from
# word processors normalize like their ASCII counterparts
PUNCTUATION = frozenset('.,?!;:"\'()[]…‘’“”')
_STRIP_TABLE = {ord(c): None for c in PUNCTUATION}


def normalize(text: str) -> str:
    """Lowercase, drop punctuation, collapse whitespace.

    >>> normalize("Why don't you just call the police?")
    'why dont you just call the police'
    """
    text = unicodedata.normalize("NFC", text)
    text = text.lower().translate(_STRIP_TABLE)
    text = unicodedata.normalize("NFC", text)
    return " ".join(text.split())


def has_punctuation(text: str) -> bool:
    return any(c in PUNCTUATION for c in text)


class Token(NamedTuple):
    surface: str
    index: int


@dataclass(frozen=True)
class AnalyzerSpec:
    kind: str = "whitespace"
    adapter: Optional[str] = None

    @classmethod
    def parse(cls, text: str) -> "AnalyzerSpec":
        """``"whitespace"`` or the name of a registered adapter."""
        if text in ("", "whitespace"):
            return WHITESPACE
        name = text.split(":", 1)[1] if text.startswith("external:") else text
        return cls("external", name)


WHITESPACE = AnalyzerSpec()


@dataclass(frozen=True)
class _Adapter:
    func: Callable[[str], List[str]]
    thread_safe: bool


_ADAPTERS: Dict[str, _Adapter] = {}
_ADAPTER_LOCKS: Dict[str, threading.Lock] = {}


def register_analyzer(name: str, func: Callable[[str], List[str]], thread_safe: bool = True) -> None:
    """Register a tokenizer callable (normalized text -> list of surfaces).

    Adapters that declare ``thread_safe=False`` are serialized behind a lock.
    """
    _ADAPTERS[name] = _Adapter(func, thread_safe)
    if not thread_safe:
        _ADAPTER_LOCKS[name] = threading.Lock()


def unregister_analyzer(name: str) -> None:
    _ADAPTERS.pop(name, None)
    _ADAPTER_LOCKS.pop(name, None)


def registered_analyzers() -> List[str]:
    return sorted(_ADAPTERS)


def tokenize(text: str, analyzer: AnalyzerSpec = WHITESPACE) -> List[Token]:
    if analyzer.kind == "whitespace":
        surfaces = text.split()
    else:
        adapter = _ADAPTERS.get(analyzer.adapter)
        if adapter is None:
            raise AnalyzerUnavailable(f"no analyzer registered as {analyzer.adapter!r}")
        lock = _ADAPTER_LOCKS.get(analyzer.adapter)
        if lock is None:
            surfaces = adapter.func(text)
        else:
            with lock:
                surfaces = adapter.func(text)
        # adapters may hand back padded or empty pieces
        surfaces = [s for piece in surfaces for s in piece.split()]
    return [Token(s, i) for i, s in enumerate(surfaces)]


def surfaces(tokens: Sequence) -> List[str]:
    """Accept Token objects or plain strings."""
    return [t.surface if isinstance(t, Token) else t for t in tokens]


def words(text: str, analyzer: AnalyzerSpec = WHITESPACE) -> List[str]:
    """normalize + tokenize, returning surfaces."""
    return [t.surface for t in tokenize(normalize(text), analyzer)]
