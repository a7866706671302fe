"""ROUGE-1, greedy embedding matching, their mean, and a retrieval baseline."""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .errors import AlignmentError, MalformedEmbeddings, NoTrainingData
from .textnorm import WHITESPACE, AnalyzerSpec, words
from .types import CorpusRecord

Triple = Tuple[float, float, float]


def _f1(p: float, r: float) -> float:
    return 2 * p * r / (p + r) if p + r > 0 else 0.0


def rouge1(candidate: Sequence[str], reference: Sequence[str]) -> Triple:
    """Unigram precision, recall and F1 with clipped counts."""
    if not candidate and not reference:
        return 1.0, 1.0, 1.0
    if not candidate or not reference:
        return 0.0, 0.0, 0.0
    ref = Counter(reference)
    overlap = sum(min(n, ref[t]) for t, n in Counter(candidate).items())
    # 2PR/(P+R) reduces to this single, correctly rounded division
    return (
        overlap / len(candidate),
        overlap / len(reference),
        2 * overlap / (len(candidate) + len(reference)),
    )


class EmbeddingTable:
    """Immutable token -> vector map; unknown tokens embed as zero."""

    def __init__(self, vectors: Mapping[str, Sequence[float]], dim: Optional[int] = None):
        tokens = list(vectors)
        if dim is None:
            if not tokens:
                raise MalformedEmbeddings("cannot infer the dimension of an empty table")
            dim = len(vectors[tokens[0]])
        matrix = np.zeros((len(tokens), dim), dtype=np.float64)
        for i, tok in enumerate(tokens):
            vec = np.asarray(vectors[tok], dtype=np.float64)
            if vec.shape != (dim,):
                raise MalformedEmbeddings(f"vector for {tok!r} has shape {vec.shape}, expected ({dim},)")
            matrix[i] = vec
        self._setup(tokens, matrix)

    def _setup(self, tokens: Sequence[str], matrix: np.ndarray) -> None:
        dim = matrix.shape[1]
        full = np.vstack([matrix, np.zeros((1, dim))])  # last row: unknown token
        norms = np.linalg.norm(full, axis=1)
        self.dim = dim
        self._index: Dict[str, int] = {}
        for i, t in enumerate(tokens):
            self._index.setdefault(t, i)
        self._unknown = len(tokens)
        self._vectors = full
        self._unit = np.divide(full, norms[:, None], out=np.zeros_like(full), where=norms[:, None] > 0)
        self._nonzero = norms > 0
        for arr in (self._vectors, self._unit, self._nonzero):
            arr.flags.writeable = False

    def __len__(self):
        return self._unknown

    def __contains__(self, token):
        return token in self._index

    def vector(self, token: str) -> np.ndarray:
        return self._vectors[self._index.get(token, self._unknown)]

    def ids(self, tokens: Sequence[str]) -> np.ndarray:
        get = self._index.get
        unk = self._unknown
        return np.fromiter((get(t, unk) for t in tokens), dtype=np.intp, count=len(tokens))

    @classmethod
    def from_matrix(cls, tokens: Sequence[str], matrix) -> "EmbeddingTable":
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] != len(tokens):
            raise MalformedEmbeddings("matrix rows must match the token list")
        table = cls.__new__(cls)
        table._setup(tokens, matrix)
        return table


def load_embeddings(path) -> EmbeddingTable:
    """Read the text format: ``token v1 .. vd`` per line, optional ``V d`` header.

    Later duplicates of a token are ignored.
    """
    tokens: List[str] = []
    rows: List[List[float]] = []
    seen = set()
    declared = None
    dim = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            if lineno == 1 and len(parts) == 2 and all(p.isdigit() for p in parts):
                declared = (int(parts[0]), int(parts[1]))
                dim = declared[1]
                continue
            try:
                vec = [float(x) for x in parts[1:]]
            except ValueError:
                raise MalformedEmbeddings(f"line {lineno}: non-numeric component") from None
            if dim is None:
                dim = len(vec)
            if len(vec) != dim or dim == 0:
                raise MalformedEmbeddings(f"line {lineno}: expected {dim} components, got {len(vec)}")
            if parts[0] in seen:
                continue
            seen.add(parts[0])
            tokens.append(parts[0])
            rows.append(vec)
    if dim is None:
        raise MalformedEmbeddings("embedding file is empty")
    if declared is not None and declared[0] != len(tokens):
        raise MalformedEmbeddings(f"header declares {declared[0]} tokens, found {len(tokens)}")
    matrix = np.array(rows, dtype=np.float64).reshape(len(rows), dim)
    return EmbeddingTable.from_matrix(tokens, matrix)


def _similarity(candidate: Sequence[str], reference: Sequence[str], emb: EmbeddingTable) -> np.ndarray:
    ci = emb.ids(candidate)
    ri = emb.ids(reference)
    sim = emb._unit[ci] @ emb._unit[ri].T
    np.clip(sim, 0.0, 1.0, out=sim)
    # exact self-similarity for identical in-vocabulary tokens
    same = (ci[:, None] == ri[None, :]) & emb._nonzero[ci][:, None]
    sim[same] = 1.0
    return sim


def semantic_score(candidate: Sequence[str], reference: Sequence[str], emb: EmbeddingTable) -> Triple:
    """Greedy max-cosine matching: precision over candidate, recall over reference."""
    if not candidate and not reference:
        return 1.0, 1.0, 1.0
    if not candidate or not reference:
        return 0.0, 0.0, 0.0
    sim = _similarity(candidate, reference, emb)
    p = float(sim.max(axis=1).mean())
    r = float(sim.max(axis=0).mean())
    return p, r, _f1(p, r)


@dataclass(frozen=True)
class PairScore:
    rouge1_p: float
    rouge1_r: float
    rouge1_f: float
    sem_p: float
    sem_r: float
    sem_f: float
    total: float

    @classmethod
    def of(cls, rouge: Triple, sem: Triple) -> "PairScore":
        return cls(*rouge, *sem, (rouge[2] + sem[2]) / 2)


FIELDS = tuple(PairScore.__dataclass_fields__)


def score_tokens(candidate: Sequence[str], reference: Sequence[str], emb: EmbeddingTable) -> PairScore:
    return PairScore.of(rouge1(candidate, reference), semantic_score(candidate, reference, emb))


def score_pair(candidate: str, reference: str, emb: EmbeddingTable, analyzer: AnalyzerSpec = WHITESPACE) -> PairScore:
    return score_tokens(words(candidate, analyzer), words(reference, analyzer), emb)


@dataclass(frozen=True)
class EvalReport:
    pairs: Tuple[PairScore, ...]
    means: Optional[Dict[str, float]]

    @property
    def count(self) -> int:
        return len(self.pairs)

    def mean(self, name: str) -> Optional[float]:
        return None if self.means is None else self.means[name]

    def as_dict(self, with_pairs: bool = False) -> dict:
        d = {"count": self.count, "means": self.means}
        if with_pairs:
            d["pairs"] = [asdict(p) for p in self.pairs]
        return d


def summarize(pairs: Sequence[PairScore]) -> EvalReport:
    """Per-pair scores and their means (absent when there are no pairs)."""
    pairs = tuple(pairs)
    if not pairs:
        return EvalReport(pairs, None)
    # fsum is exactly rounded, so the means do not depend on pair order
    means = {f: math.fsum(getattr(p, f) for p in pairs) / len(pairs) for f in FIELDS}
    return EvalReport(pairs, means)


def score_corpus(
    predictions: Sequence[str],
    gold: Sequence[CorpusRecord],
    emb: EmbeddingTable,
    analyzer: AnalyzerSpec = WHITESPACE,
) -> EvalReport:
    if len(predictions) != len(gold):
        raise AlignmentError(f"{len(predictions)} predictions for {len(gold)} gold records")
    return summarize(score_pair(p, g.argument, emb, analyzer) for p, g in zip(predictions, gold))


class NearestNeighbourBaseline:
    """Returns the argument of the training sentence with the best ROUGE-1 F1."""

    def __init__(self, train: Sequence[CorpusRecord], analyzer: AnalyzerSpec = WHITESPACE):
        if not train:
            raise NoTrainingData("the baseline needs at least one training record")
        self.analyzer = analyzer
        self._arguments = [r.argument for r in train]
        self._counts: List[Counter] = []
        self._lengths: List[int] = []
        self._index: Dict[str, List[int]] = defaultdict(list)
        for i, rec in enumerate(train):
            counts = Counter(words(rec.sentence, analyzer))
            self._counts.append(counts)
            self._lengths.append(sum(counts.values()))
            for tok in counts:
                self._index[tok].append(i)

    def best_index(self, sentence: str) -> int:
        query = Counter(words(sentence, self.analyzer))
        qlen = sum(query.values())
        if qlen == 0:
            # only empty training sentences score above zero
            return next((i for i, n in enumerate(self._lengths) if n == 0), 0)
        overlap: Dict[int, int] = defaultdict(int)
        for tok, n in query.items():
            for i in self._index.get(tok, ()):
                overlap[i] += min(n, self._counts[i][tok])
        best, best_f = 0, Fraction(0)
        for i in sorted(overlap):
            f = Fraction(2 * overlap[i], qlen + self._lengths[i])
            if f > best_f:
                best, best_f = i, f
        return best

    def predict(self, sentence: str) -> str:
        return self._arguments[self.best_index(sentence)]


def nn_baseline_predict(train: Sequence[CorpusRecord], sentence: str, analyzer: AnalyzerSpec = WHITESPACE) -> str:
    return NearestNeighbourBaseline(train, analyzer).predict(sentence)
