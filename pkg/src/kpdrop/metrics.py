"""Ranked keyphrase scoring.

Matching is at the stemmed-phrase level: a prediction matches a gold
phrase when their stem sequences are identical.  Both sides are
deduplicated by stem (first occurrence kept, rank preserved) and each
gold phrase can be claimed by at most one prediction.

Cutoff semantics: F1@M scores the full deduplicated list; F1@k
truncates to the top k and uses the truncated length as the precision
denominator (so F1@5 = F1@M whenever there are at most 5 predictions);
the @5C variant always divides precision by 5 even when fewer
predictions exist.  R@k is the recall of the top k.  Corpus scores are
macro averages: per-document values averaged over the documents whose
gold side is non-empty; the rest are skipped and counted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import DuplicateIdError, ScoringError
from .partition import Document, KeyphraseSet
from .textnorm import DEFAULT_MASK, TokenSeq, find_matches, tokenize

METRIC_NAMES = ("f1_at_m", "f1_at_5", "f1_at_5c", "recall_at_10", "recall_at_50")

CATEGORIES = ("present", "absent")


@dataclass(frozen=True)
class Prediction:
    doc_id: str
    phrases: tuple[str, ...]  # ranked, best first


@dataclass(frozen=True)
class DocScore:
    precision: float
    recall: float
    f1: float
    n_pred: int
    n_gold: int
    n_matched: int


@dataclass(frozen=True)
class ScoreReport:
    category: str
    n_docs_scored: int
    n_docs_skipped: int
    macro: Mapping[str, float]
    per_doc: tuple[tuple[str, Mapping[str, float]], ...]


@lru_cache(maxsize=1 << 16)
def _phrase_seq(phrase: str, mask_token: str) -> TokenSeq:
    return tokenize(phrase, mask_token)


def _keys(phrases: Iterable[str], mask_token: str) -> list[tuple[str, ...]]:
    return [_phrase_seq(p, mask_token).stems for p in phrases]


def dedup_by_stem(
    phrases: Sequence[str], mask_token: str = DEFAULT_MASK
) -> list[str]:
    """First occurrence of each stem sequence, rank order preserved.

    Phrases that tokenize to nothing are dropped: they can never match.
    """
    seen: set[tuple[str, ...]] = set()
    out: list[str] = []
    for phrase, key in zip(phrases, _keys(phrases, mask_token)):
        if key and key not in seen:
            seen.add(key)
            out.append(phrase)
    return out


def match(
    preds: Sequence[str], gold: Sequence[str], mask_token: str = DEFAULT_MASK
) -> list[bool]:
    """Match flags aligned with dedup_by_stem(preds).

    Greedy in rank order; each gold phrase is consumed by at most one
    prediction.
    """
    deduped = dedup_by_stem(preds, mask_token)
    unclaimed = {k for k in _keys(gold, mask_token) if k}
    flags: list[bool] = []
    for key in _keys(deduped, mask_token):
        if key in unclaimed:
            unclaimed.remove(key)
            flags.append(True)
        else:
            flags.append(False)
    return flags


def _prf(n_matched: int, pred_denom: int, n_gold: int) -> tuple[float, float, float]:
    precision = n_matched / pred_denom if pred_denom > 0 else 0.0
    recall = n_matched / n_gold if n_gold > 0 else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return precision, recall, f1


def _n_gold(gold: Sequence[str], mask_token: str) -> int:
    return len({k for k in _keys(gold, mask_token) if k})


def f1_at_m(
    preds: Sequence[str], gold: Sequence[str], mask_token: str = DEFAULT_MASK
) -> DocScore:
    """Score the full prediction list."""
    flags = match(preds, gold, mask_token)
    n_pred, n_gold = len(flags), _n_gold(gold, mask_token)
    m = sum(flags)
    p, r, f1 = _prf(m, n_pred, n_gold)
    return DocScore(p, r, f1, n_pred, n_gold, m)


def f1_at_k(
    preds: Sequence[str],
    gold: Sequence[str],
    k: int,
    mask_token: str = DEFAULT_MASK,
) -> DocScore:
    """Score the top k; precision denominator is the truncated length."""
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    top = dedup_by_stem(preds, mask_token)[:k]
    flags = match(top, gold, mask_token)
    n_pred, n_gold = len(flags), _n_gold(gold, mask_token)
    m = sum(flags)
    p, r, f1 = _prf(m, n_pred, n_gold)
    return DocScore(p, r, f1, n_pred, n_gold, m)


def f1_at_5c(
    preds: Sequence[str], gold: Sequence[str], mask_token: str = DEFAULT_MASK
) -> DocScore:
    """Top-5 score with the precision denominator forced to 5."""
    top = dedup_by_stem(preds, mask_token)[:5]
    flags = match(top, gold, mask_token)
    n_pred, n_gold = len(flags), _n_gold(gold, mask_token)
    m = sum(flags)
    _, r, _ = _prf(m, n_pred, n_gold)
    p = m / 5.0
    f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return DocScore(p, r, f1, n_pred, n_gold, m)


def recall_at_k(
    preds: Sequence[str],
    gold: Sequence[str],
    k: int,
    mask_token: str = DEFAULT_MASK,
) -> float:
    """Recall of the top k (0 when the gold side is empty)."""
    return f1_at_k(preds, gold, k, mask_token).recall


def categorize_predictions(
    phrases: Sequence[str], doc: Document, mask_token: str = DEFAULT_MASK
) -> dict[str, list[str]]:
    """Split deduplicated predictions by presence in the document.

    Presence is judged against the document as given; for augmentation
    evaluation pass the original, unmasked document.
    """
    out: dict[str, list[str]] = {"present": [], "absent": []}
    for phrase in dedup_by_stem(phrases, mask_token):
        seq = _phrase_seq(phrase, mask_token)
        category = "present" if find_matches(doc.full, seq) else "absent"
        out[category].append(phrase)
    return out


def score_document(
    phrases: Sequence[str],
    doc: Document,
    kps: KeyphraseSet,
    category: str,
    mask_token: str = DEFAULT_MASK,
) -> dict[str, float] | None:
    """Metric values for one document, or None when the gold side is
    empty (the document is then skipped in macro averaging)."""
    if category not in CATEGORIES:
        raise ValueError(f"category must be one of {CATEGORIES}, got {category!r}")
    if category == "present":
        gold = [pp.phrase.text for pp in kps.present]
    else:
        gold = [p.text for p in kps.absent]
    if not gold:
        return None
    preds = categorize_predictions(phrases, doc, mask_token)[category]
    return {
        "f1_at_m": f1_at_m(preds, gold, mask_token).f1,
        "f1_at_5": f1_at_k(preds, gold, 5, mask_token).f1,
        "f1_at_5c": f1_at_5c(preds, gold, mask_token).f1,
        "recall_at_10": recall_at_k(preds, gold, 10, mask_token),
        "recall_at_50": recall_at_k(preds, gold, 50, mask_token),
    }


def score_corpus(
    predictions: Sequence[Prediction],
    corpus: Sequence[tuple[Document, KeyphraseSet]],
    category: str,
    mask_token: str = DEFAULT_MASK,
) -> ScoreReport:
    """Macro-averaged scores over a corpus.

    Every prediction must reference a corpus document; documents with
    no prediction entry are scored against an empty list.
    """
    doc_ids = [doc.id for doc, _ in corpus]
    known = set(doc_ids)
    if len(known) != len(doc_ids):
        raise DuplicateIdError("corpus contains duplicate document ids")
    by_id: dict[str, Prediction] = {}
    for pred in predictions:
        if pred.doc_id in by_id:
            raise DuplicateIdError(f"duplicate prediction for doc id {pred.doc_id!r}")
        if pred.doc_id not in known:
            raise ScoringError(f"prediction for unknown doc id {pred.doc_id!r}")
        by_id[pred.doc_id] = pred

    rows: list[tuple[str, Mapping[str, float]]] = []
    skipped = 0
    sums = {name: 0.0 for name in METRIC_NAMES}
    for doc, kps in corpus:
        pred = by_id.get(doc.id)
        values = score_document(
            pred.phrases if pred else (), doc, kps, category, mask_token
        )
        if values is None:
            skipped += 1
            continue
        rows.append((doc.id, values))
        for name in METRIC_NAMES:
            sums[name] += values[name]
    n_scored = len(rows)
    macro = {
        name: (sums[name] / n_scored if n_scored else 0.0) for name in METRIC_NAMES
    }
    return ScoreReport(
        category=category,
        n_docs_scored=n_scored,
        n_docs_skipped=skipped,
        macro=macro,
        per_doc=tuple(rows),
    )
