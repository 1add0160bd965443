"""Keyphrase corpus toolkit.

Partition gold keyphrases into present/absent by stemmed matching,
augment corpora by dropping and masking present keyphrases, serialize
training targets for sequential and set-style decoders, score ranked
predictions, and build semi-supervised splits with synthetic labels.
"""

from .augment import (
    AugmentedSample,
    DropConfig,
    apply_drop,
    kpdrop_append,
    kpdrop_replace,
    rng_for_document,
    sample_drop_set,
)
from .corpusio import AugmentedRecord, CorpusRecord, ingest
from .errors import (
    DuplicateIdError,
    EmptyPhraseError,
    KpdropError,
    PhraseNotPresentError,
    ScoringError,
)
from .metrics import (
    DocScore,
    Prediction,
    ScoreReport,
    f1_at_5c,
    f1_at_k,
    f1_at_m,
    match,
    recall_at_k,
    score_corpus,
)
from .partition import Document, KeyphraseSet, PresentPhrase, make_document, partition
from .semisup import (
    SplitSpec,
    TfidfScorer,
    build_df_table,
    extract_candidates,
    label_synthetic,
    rank_and_label,
    split_corpus,
)
from .targets import (
    One2SetTarget,
    format_one2many,
    format_one2one,
    format_one2set,
)
from .textnorm import (
    DEFAULT_MASK,
    DIGIT_TOKEN,
    Span,
    Token,
    TokenSeq,
    find_matches,
    stem_seq,
    tokenize,
)

__version__ = "0.1.0"

__all__ = [
    "AugmentedRecord",
    "AugmentedSample",
    "CorpusRecord",
    "DEFAULT_MASK",
    "DIGIT_TOKEN",
    "DocScore",
    "Document",
    "DropConfig",
    "DuplicateIdError",
    "EmptyPhraseError",
    "KeyphraseSet",
    "KpdropError",
    "One2SetTarget",
    "PhraseNotPresentError",
    "Prediction",
    "PresentPhrase",
    "ScoreReport",
    "ScoringError",
    "Span",
    "SplitSpec",
    "TfidfScorer",
    "Token",
    "TokenSeq",
    "apply_drop",
    "build_df_table",
    "extract_candidates",
    "f1_at_5c",
    "f1_at_k",
    "f1_at_m",
    "find_matches",
    "format_one2many",
    "format_one2one",
    "format_one2set",
    "ingest",
    "kpdrop_append",
    "kpdrop_replace",
    "label_synthetic",
    "make_document",
    "match",
    "partition",
    "rank_and_label",
    "rng_for_document",
    "sample_drop_set",
    "score_corpus",
    "split_corpus",
    "stem_seq",
    "tokenize",
]
