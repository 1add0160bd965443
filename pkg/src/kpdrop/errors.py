"""Exception types shared across the package."""

from __future__ import annotations


class KpdropError(Exception):
    """Base class for errors raised by this package."""


class EmptyPhraseError(KpdropError, ValueError):
    """A keyphrase or prediction tokenized to zero tokens."""


class PhraseNotPresentError(KpdropError, ValueError):
    """A drop set contains a phrase that is not present in the document."""


class DuplicateIdError(KpdropError, ValueError):
    """A corpus or prediction file contains a repeated document id."""


class ScoringError(KpdropError, ValueError):
    """Predictions cannot be aligned with the gold corpus."""
