"""Low-resource split and synthetic labeling for unlabeled documents.

The corpus is shuffled with a seeded generator and cut into a labeled
subset (gold kept) and an unlabeled remainder (gold stripped).  The
remainder gets synthetic labels: candidate phrases are document
n-grams scored by an exchangeable scorer, and the top k become the
document's keyphrases.  Candidates are windows of the document itself,
so every synthetic label is present by construction.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Sequence

from .corpusio import CorpusRecord
from .partition import Document, make_document
from .stopwords import STOPWORDS
from .textnorm import DEFAULT_MASK, TokenSeq, find_matches

DEFAULT_N_LABELED = 5000
DEFAULT_TOP_K = 10
MAX_CANDIDATE_LEN = 5

Scorer = Callable[[Document, TokenSeq], float]


@dataclass(frozen=True)
class SplitSpec:
    n_labeled: int = DEFAULT_N_LABELED
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_labeled < 0:
            raise ValueError(f"n_labeled must be >= 0, got {self.n_labeled}")


def split_corpus(
    records: Sequence[CorpusRecord], spec: SplitSpec
) -> tuple[list[CorpusRecord], list[CorpusRecord]]:
    """Shuffle and cut into (labeled, unlabeled-with-gold-stripped)."""
    if spec.n_labeled > len(records):
        raise ValueError(
            f"n_labeled={spec.n_labeled} exceeds corpus size {len(records)}"
        )
    order = list(range(len(records)))
    random.Random(spec.seed).shuffle(order)
    labeled = [records[i] for i in order[: spec.n_labeled]]
    unlabeled = [
        replace(records[i], keyphrases=None) for i in order[spec.n_labeled :]
    ]
    return labeled, unlabeled


def extract_candidates(
    doc: Document,
    max_len: int = MAX_CANDIDATE_LEN,
    stopwords: frozenset[str] = STOPWORDS,
) -> list[TokenSeq]:
    """Candidate phrases: 1..max_len-grams of the document with no
    stopword at either boundary and no reserved token anywhere,
    deduplicated by stem in first-occurrence order."""
    tokens = doc.full.tokens
    banned = [t.is_mask or t.norm == "<digit>" for t in tokens]
    stop = [t.norm in stopwords for t in tokens]
    seen: set[tuple[str, ...]] = set()
    out: list[TokenSeq] = []
    n = len(tokens)
    for start in range(n):
        if banned[start] or stop[start]:
            continue
        for length in range(1, max_len + 1):
            end = start + length
            if end > n or banned[end - 1]:
                break
            if stop[end - 1]:
                continue
            cand = TokenSeq(tokens[start:end])
            if cand.stems not in seen:
                seen.add(cand.stems)
                out.append(cand)
    return out


@dataclass(frozen=True)
class DfTable:
    """Document frequencies of stems over a reference corpus."""

    counts: dict[str, int]
    n_docs: int


def build_df_table(docs: Iterable[Document]) -> DfTable:
    counts: Counter[str] = Counter()
    n = 0
    for doc in docs:
        n += 1
        counts.update(set(doc.full.stems))
    return DfTable(dict(counts), n)


class TfidfScorer:
    """Default candidate scorer: summed tf-idf of the candidate's
    stems, damped by how late the candidate first occurs."""

    def __init__(self, df: DfTable):
        self._df = df
        self._cache_id: str | None = None
        self._cache_counts: Counter[str] = Counter()

    def _idf(self, stem: str) -> float:
        df = self._df.counts.get(stem, 0)
        return math.log((1 + self._df.n_docs) / (1 + df)) + 1.0

    def _counts(self, doc: Document) -> Counter[str]:
        if self._cache_id != doc.id:
            self._cache_id = doc.id
            self._cache_counts = Counter(doc.full.stems)
        return self._cache_counts

    def __call__(self, doc: Document, candidate: TokenSeq) -> float:
        counts = self._counts(doc)
        n = len(doc.full) or 1
        tfidf = sum(
            (counts[s] / n) * self._idf(s) for s in candidate.stems
        )
        spans = find_matches(doc.full, candidate)
        first = spans[0].start if spans else n
        return tfidf / (1.0 + first / n)


def rank_and_label(
    doc: Document, k: int = DEFAULT_TOP_K, scorer: Scorer | None = None
) -> list[TokenSeq]:
    """Top-k candidates by score; ties broken by earlier first
    occurrence, then shorter phrase."""
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    if scorer is None:
        scorer = TfidfScorer(build_df_table([doc]))
    ranked: list[tuple[float, int, int, TokenSeq]] = []
    for cand in extract_candidates(doc):
        spans = find_matches(doc.full, cand)
        first = spans[0].start if spans else len(doc.full)
        ranked.append((-scorer(doc, cand), first, len(cand), cand))
    ranked.sort(key=lambda item: item[:3])
    return [cand for *_, cand in ranked[:k]]


def label_synthetic(
    records: Sequence[CorpusRecord],
    k: int = DEFAULT_TOP_K,
    scorer: Scorer | None = None,
    mask_token: str = DEFAULT_MASK,
) -> list[CorpusRecord]:
    """Attach top-k synthetic keyphrases to every record.

    Without an explicit scorer, document frequencies are computed over
    the given records themselves.
    """
    docs = [make_document(r.id, r.title, r.abstract, mask_token) for r in records]
    if scorer is None:
        scorer = TfidfScorer(build_df_table(docs))
    out: list[CorpusRecord] = []
    for rec, doc in zip(records, docs):
        labels = rank_and_label(doc, k, scorer)
        out.append(replace(rec, keyphrases=[c.text for c in labels]))
    return out
