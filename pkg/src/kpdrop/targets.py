"""Training-target serialization for the three decoding paradigms.

All three formats share one phrase order: surviving present phrases
sorted by first occurrence in the original document, then the dropped
(artificial absent) phrases in the same first-occurrence order, then
the natural absent phrases in author order.  Nested phrases with the
same first-occurrence position put the longer phrase first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .augment import AugmentedSample
from .errors import KpdropError
from .textnorm import TokenSeq

DELIMITER = ";"


class TargetFormatError(KpdropError, ValueError):
    pass


def phrase_text(phrase: TokenSeq) -> str:
    text = phrase.text
    if DELIMITER in text:
        raise TargetFormatError(
            f"phrase {text!r} contains the target delimiter {DELIMITER!r}"
        )
    return text


def _by_occurrence(sample: AugmentedSample, phrases) -> list[TokenSeq]:
    starts = sample.occurrence_starts

    def key(p: TokenSeq):
        try:
            return (starts[p.stems], -len(p))
        except KeyError:
            raise TargetFormatError(
                f"sample {sample.original_id!r} lacks an occurrence position "
                f"for {p.text!r}"
            ) from None

    return sorted(phrases, key=key)


def ordered_phrases(sample: AugmentedSample) -> tuple[TokenSeq, ...]:
    """Canonical serialization order for a sample."""
    present = _by_occurrence(sample, sample.present_new)
    artificial = _by_occurrence(sample, sample.absent_artificial)
    return tuple(present) + tuple(artificial) + tuple(sample.absent_natural)


def format_one2many(sample: AugmentedSample) -> str:
    """Single delimited target string (empty when there are no phrases)."""
    return DELIMITER.join(phrase_text(p) for p in ordered_phrases(sample))


def format_one2one(sample: AugmentedSample) -> tuple[str, ...]:
    """One target phrase per training pair, same order as one2many."""
    return tuple(phrase_text(p) for p in ordered_phrases(sample))


@dataclass(frozen=True)
class One2SetTarget:
    """Slot lists for set-style decoding; present and absent slots are
    separate collections and carry no meaningful internal order beyond
    the canonical one used for reproducibility."""

    present: tuple[str, ...]
    absent: tuple[str, ...]


def sample_to_lists(
    sample: AugmentedSample,
) -> tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]:
    """(present, artificial, natural) phrase texts in canonical order."""
    present = _by_occurrence(sample, sample.present_new)
    artificial = _by_occurrence(sample, sample.absent_artificial)
    return (
        tuple(phrase_text(p) for p in present),
        tuple(phrase_text(p) for p in artificial),
        tuple(phrase_text(p) for p in sample.absent_natural),
    )


def format_one2set(sample: AugmentedSample) -> One2SetTarget:
    present = _by_occurrence(sample, sample.present_new)
    artificial = _by_occurrence(sample, sample.absent_artificial)
    return One2SetTarget(
        present=tuple(phrase_text(p) for p in present),
        absent=tuple(phrase_text(p) for p in artificial)
        + tuple(phrase_text(p) for p in sample.absent_natural),
    )
