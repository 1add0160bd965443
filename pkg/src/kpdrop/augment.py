"""Keyphrase dropout augmentation.

Each present keyphrase is independently dropped with a configured
probability.  Every occurrence of a dropped phrase is replaced by a
single mask token, which turns the phrase into an artificial absent
keyphrase while the gold set, viewed as a set, is unchanged.

Two batch strategies are provided: replace swaps every sample for its
dropped counterpart (batch size preserved), append keeps the originals
and adds the dropped counterparts (batch size doubled).
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import PhraseNotPresentError
from .partition import Document, KeyphraseSet
from .textnorm import (
    DEFAULT_MASK,
    Span,
    TokenSeq,
    mask_token_for,
    validate_mask_token,
)

DEFAULT_DROP_RATE = 0.7

StemKey = tuple[str, ...]


@dataclass(frozen=True)
class DropConfig:
    rate: float = DEFAULT_DROP_RATE
    mask_token: str = DEFAULT_MASK
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.rate <= 1.0:
            raise ValueError(f"drop rate must be in [0, 1], got {self.rate}")
        validate_mask_token(self.mask_token)


@dataclass(frozen=True)
class AugmentedSample:
    original_id: str
    doc_new: Document
    present_new: tuple[TokenSeq, ...]  # surviving present, author order
    absent_natural: tuple[TokenSeq, ...]  # author order
    absent_artificial: tuple[TokenSeq, ...]  # dropped, sampling order
    mask_spans: tuple[Span, ...]  # original-document coordinates
    # first occurrence start in the original document for every phrase
    # that was present before the drop, keyed by stem sequence
    occurrence_starts: Mapping[StemKey, int] = field(default_factory=dict)


def rng_for_document(seed: int, doc_id: str, epoch: int = 0) -> random.Random:
    """Deterministic per-document stream, independent of batch order."""
    key = f"{seed}\x1f{doc_id}\x1f{epoch}".encode("utf-8")
    digest = hashlib.blake2b(key, digest_size=8).digest()
    return random.Random(int.from_bytes(digest, "big"))


def sample_drop_set(
    kps: KeyphraseSet, cfg: DropConfig, rng: random.Random
) -> tuple[TokenSeq, ...]:
    """Independently select each present phrase with probability rate."""
    return tuple(pp.phrase for pp in kps.present if rng.random() < cfg.rate)


def _select_mask_spans(
    kps: KeyphraseSet, drop_keys: set[StemKey]
) -> tuple[Span, ...]:
    # all occurrences of all dropped phrases; greedy non-overlapping
    # cover, longest phrase first, then leftmost
    candidates: list[tuple[int, int]] = []
    for pp in kps.present:
        if pp.phrase.stems in drop_keys:
            candidates.extend((s.start, s.end) for s in pp.spans)
    candidates.sort(key=lambda se: (se[0] - se[1], se[0]))
    chosen: list[Span] = []
    for start, end in candidates:
        span = Span(start, end)
        if all(not span.overlaps(c) for c in chosen):
            chosen.append(span)
    chosen.sort(key=lambda s: s.start)
    return tuple(chosen)


def apply_drop(
    doc: Document,
    kps: KeyphraseSet,
    dropped: Sequence[TokenSeq],
    cfg: DropConfig,
) -> AugmentedSample:
    """Mask every occurrence of the dropped phrases and repartition the
    gold list bookkeeping accordingly.

    Raises PhraseNotPresentError if a dropped phrase is not among the
    present phrases of kps.
    """
    present_keys = {pp.phrase.stems for pp in kps.present}
    drop_keys: dict[StemKey, None] = {}
    for phrase in dropped:
        if phrase.stems not in present_keys:
            raise PhraseNotPresentError(
                f"cannot drop {phrase.text!r}: not a present keyphrase"
            )
        drop_keys.setdefault(phrase.stems, None)

    spans = _select_mask_spans(kps, set(drop_keys))
    mask = mask_token_for(cfg.mask_token)
    tokens = doc.full.tokens
    title_len = len(doc.title)

    new_tokens: list = []
    new_title_len = 0
    cursor = 0
    for span in spans:
        new_tokens.extend(tokens[cursor : span.start])
        new_title_len += max(0, min(span.start, title_len) - min(cursor, title_len))
        new_tokens.append(mask)
        if span.start < title_len:  # crossing spans count toward the title
            new_title_len += 1
        cursor = span.end
    new_tokens.extend(tokens[cursor:])
    new_title_len += max(0, title_len - min(cursor, title_len))

    full_new = TokenSeq(tuple(new_tokens))
    doc_new = Document(
        doc.id,
        TokenSeq(full_new.tokens[:new_title_len]),
        TokenSeq(full_new.tokens[new_title_len:]),
        full_new,
    )

    present_new = tuple(
        pp.phrase for pp in kps.present if pp.phrase.stems not in drop_keys
    )
    artificial = tuple(
        pp.phrase for pp in kps.present if pp.phrase.stems in drop_keys
    )
    # keep the caller's sampling order for the dropped set
    order = {key: i for i, key in enumerate(drop_keys)}
    artificial = tuple(sorted(artificial, key=lambda p: order[p.stems]))

    occurrence_starts = {pp.phrase.stems: pp.spans[0].start for pp in kps.present}
    return AugmentedSample(
        original_id=doc.id,
        doc_new=doc_new,
        present_new=present_new,
        absent_natural=kps.absent,
        absent_artificial=artificial,
        mask_spans=spans,
        occurrence_starts=occurrence_starts,
    )


Batch = Sequence[tuple[Document, KeyphraseSet]]


def kpdrop_replace(
    batch: Batch, cfg: DropConfig, epoch: int = 0
) -> list[AugmentedSample]:
    """Replace each sample with its dropped counterpart (length preserved)."""
    out: list[AugmentedSample] = []
    for doc, kps in batch:
        rng = rng_for_document(cfg.seed, doc.id, epoch)
        dropped = sample_drop_set(kps, cfg, rng)
        out.append(apply_drop(doc, kps, dropped, cfg))
    return out


def kpdrop_append(
    batch: Batch, cfg: DropConfig, epoch: int = 0
) -> list[AugmentedSample]:
    """Originals followed by their dropped counterparts (length doubled)."""
    originals = [apply_drop(doc, kps, (), cfg) for doc, kps in batch]
    return originals + kpdrop_replace(batch, cfg, epoch)
