"""Tokenization, normalization and stemmed-span matching.

Tokens are maximal alphanumeric runs; word-internal hyphens are kept,
so "hearing-aid" is a single token (and therefore does not match the
two-token phrase "hearing aids").  Each token carries its original
surface, a lowercased norm, and a stem.  Hyphenated tokens are stemmed
segment-wise ("hearing-aids" -> "hear-aid").

Two reserved tokens pass through tokenization unchanged and stem to
themselves: the mask token (default "[MASK]") and "<digit>", which
also replaces any standalone run of digits.  Mask tokens never
participate in matching.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import EmptyPhraseError
from .porter import stem as porter_stem

DEFAULT_MASK = "[MASK]"
DIGIT_TOKEN = "<digit>"

_WORD_PATTERN = r"[0-9A-Za-z]+(?:-[0-9A-Za-z]+)*"
_WORD_RE = re.compile(rf"{_WORD_PATTERN}\Z")
_DIGITS_RE = re.compile(r"[0-9]+\Z")


def validate_mask_token(mask_token: str) -> None:
    """Reject mask tokens that could collide with ordinary text."""
    if not mask_token:
        raise ValueError("mask token must be non-empty")
    if any(ch.isspace() for ch in mask_token):
        raise ValueError(f"mask token {mask_token!r} must not contain whitespace")
    if ";" in mask_token:
        raise ValueError(f"mask token {mask_token!r} must not contain ';'")
    if mask_token == DIGIT_TOKEN:
        raise ValueError(f"mask token must not be the reserved token {DIGIT_TOKEN!r}")
    if _WORD_RE.match(mask_token):
        raise ValueError(
            f"mask token {mask_token!r} looks like an ordinary word and could "
            "collide with document text"
        )


@lru_cache(maxsize=64)
def _scanner(mask_token: str) -> re.Pattern[str]:
    validate_mask_token(mask_token)
    # reserved literals first so they win over the word pattern
    return re.compile(
        "|".join((re.escape(mask_token), re.escape(DIGIT_TOKEN), _WORD_PATTERN))
    )


@dataclass(frozen=True, slots=True)
class Token:
    surface: str
    norm: str
    stem: str
    is_mask: bool = False


@lru_cache(maxsize=1 << 18)
def _stem_norm(norm: str) -> str:
    if "-" in norm:
        return "-".join(porter_stem(seg) for seg in norm.split("-"))
    return porter_stem(norm)


def mask_token_for(mask_token: str) -> Token:
    """The Token a mask materializes as (stems to itself)."""
    validate_mask_token(mask_token)
    return Token(mask_token, mask_token, mask_token, is_mask=True)


@dataclass(frozen=True)
class Span:
    """Half-open token index range [start, end)."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start < 0 or self.end <= self.start:
            raise ValueError(f"invalid span [{self.start}, {self.end})")

    @property
    def length(self) -> int:
        return self.end - self.start

    def overlaps(self, other: "Span") -> bool:
        return self.start < other.end and other.start < self.end


@dataclass(frozen=True)
class TokenSeq:
    tokens: tuple[Token, ...]

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]

    def __bool__(self) -> bool:
        return bool(self.tokens)

    @cached_property
    def norms(self) -> tuple[str, ...]:
        return tuple(t.norm for t in self.tokens)

    @cached_property
    def stems(self) -> tuple[str, ...]:
        return tuple(t.stem for t in self.tokens)

    @property
    def text(self) -> str:
        """Normalized rendering; re-tokenizing it reproduces the norms."""
        return " ".join(self.norms)

    @cached_property
    def mask_positions(self) -> frozenset[int]:
        return frozenset(i for i, t in enumerate(self.tokens) if t.is_mask)

    @cached_property
    def _stem_starts(self) -> dict[str, tuple[int, ...]]:
        # first-token index for window matching
        starts: dict[str, list[int]] = {}
        for i, s in enumerate(self.stems):
            starts.setdefault(s, []).append(i)
        return {s: tuple(v) for s, v in starts.items()}

    def concat(self, other: "TokenSeq") -> "TokenSeq":
        return TokenSeq(self.tokens + other.tokens)


def tokenize(text: str, mask_token: str = DEFAULT_MASK) -> TokenSeq:
    """Split text into tokens, dropping punctuation between runs."""
    scanner = _scanner(mask_token)
    tokens: list[Token] = []
    for m in scanner.finditer(text):
        surface = m.group()
        if surface == mask_token:
            tokens.append(Token(surface, surface, surface, is_mask=True))
        elif surface == DIGIT_TOKEN:
            tokens.append(Token(surface, DIGIT_TOKEN, DIGIT_TOKEN))
        else:
            norm = surface.lower()
            if _DIGITS_RE.match(norm):
                tokens.append(Token(surface, DIGIT_TOKEN, DIGIT_TOKEN))
            else:
                tokens.append(Token(surface, norm, _stem_norm(norm)))
    return TokenSeq(tuple(tokens))


def stem_seq(seq: TokenSeq) -> tuple[str, ...]:
    """Stem sequence of a token sequence."""
    return seq.stems


def find_matches(doc: TokenSeq, phrase: TokenSeq) -> tuple[Span, ...]:
    """All contiguous stem-equal occurrences of phrase in doc.

    Occurrences may overlap each other.  Windows containing a mask
    token never match, and a phrase containing a mask matches nothing.
    """
    if len(phrase) == 0:
        raise EmptyPhraseError("cannot match an empty phrase")
    if phrase.mask_positions:
        return ()
    target = phrase.stems
    m = len(target)
    n = len(doc)
    doc_stems = doc.stems
    masks = doc.mask_positions
    spans: list[Span] = []
    for i in doc._stem_starts.get(target[0], ()):
        if i + m > n:
            break
        if doc_stems[i : i + m] != target:
            continue
        if masks and not masks.isdisjoint(range(i, i + m)):
            continue
        spans.append(Span(i, i + m))
    return tuple(spans)
