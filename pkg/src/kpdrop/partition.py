"""Present/absent partitioning of gold keyphrases against a document.

A phrase is present when its stem sequence occurs contiguously in the
stemmed document (title + body), absent otherwise.  Gold lists are
deduplicated by stem sequence, keeping the first occurrence, so
"Models" and "model" collapse into one entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import EmptyPhraseError
from .textnorm import DEFAULT_MASK, Span, TokenSeq, find_matches, tokenize


@dataclass(frozen=True)
class Document:
    """Tokenized document; full is exactly title followed by body."""

    id: str
    title: TokenSeq
    body: TokenSeq
    full: TokenSeq


def make_document(
    doc_id: str, title: str, body: str, mask_token: str = DEFAULT_MASK
) -> Document:
    title_seq = tokenize(title, mask_token)
    body_seq = tokenize(body, mask_token)
    return Document(doc_id, title_seq, body_seq, title_seq.concat(body_seq))


@dataclass(frozen=True)
class PresentPhrase:
    phrase: TokenSeq
    spans: tuple[Span, ...]  # every occurrence, ascending start


@dataclass(frozen=True)
class KeyphraseSet:
    all_phrases: tuple[TokenSeq, ...]  # deduplicated, author order
    present: tuple[PresentPhrase, ...]
    absent: tuple[TokenSeq, ...]

    @property
    def present_phrases(self) -> tuple[TokenSeq, ...]:
        return tuple(pp.phrase for pp in self.present)


def dedup_phrases(phrases: Iterable[TokenSeq]) -> tuple[TokenSeq, ...]:
    """Drop later phrases whose stem sequence was already seen."""
    seen: dict[tuple[str, ...], None] = {}
    out: list[TokenSeq] = []
    for p in phrases:
        if p.stems not in seen:
            seen[p.stems] = None
            out.append(p)
    return tuple(out)


def partition(
    doc: Document, gold: Iterable[str], mask_token: str = DEFAULT_MASK
) -> KeyphraseSet:
    """Split gold phrases into present and absent for doc.

    Raises EmptyPhraseError when a phrase tokenizes to nothing.
    """
    tokenized: list[TokenSeq] = []
    for raw in gold:
        seq = tokenize(raw, mask_token)
        if len(seq) == 0:
            raise EmptyPhraseError(f"keyphrase {raw!r} tokenizes to zero tokens")
        tokenized.append(seq)
    deduped = dedup_phrases(tokenized)
    present: list[PresentPhrase] = []
    absent: list[TokenSeq] = []
    for phrase in deduped:
        spans = find_matches(doc.full, phrase)
        if spans:
            present.append(PresentPhrase(phrase, spans))
        else:
            absent.append(phrase)
    return KeyphraseSet(deduped, tuple(present), tuple(absent))
