"""Porter stemmer.

Implements the widely deployed revision of the classic algorithm (the
ANSI-C lineage), which differs from the first published description in
three ways:

* step 2 maps ``bli`` -> ``ble`` instead of ``abli`` -> ``able``
* step 2 adds ``logi`` -> ``log``
* words of length <= 2 are returned unchanged

Digits and other non-letters are treated as consonants, so tokens such
as ``x86`` pass through mostly untouched.  Input is lowercased; output
is therefore always lowercase.
"""

from __future__ import annotations

from functools import lru_cache

_VOWELS = frozenset("aeiou")


def _cons_flags(word: str) -> list[bool]:
    # True where the character acts as a consonant. 'y' is a consonant
    # at position 0 and after a vowel, a vowel after a consonant.
    flags: list[bool] = []
    for i, ch in enumerate(word):
        if ch in _VOWELS:
            flags.append(False)
        elif ch == "y":
            flags.append(True if i == 0 else not flags[i - 1])
        else:
            flags.append(True)
    return flags


def _measure(stem: str) -> int:
    # m in the [C](VC)^m[V] decomposition = number of vowel->consonant
    # transitions.
    flags = _cons_flags(stem)
    return sum(1 for i in range(1, len(flags)) if flags[i] and not flags[i - 1])


def _has_vowel(stem: str) -> bool:
    return not all(_cons_flags(stem))


def _ends_double_consonant(stem: str) -> bool:
    if len(stem) < 2 or stem[-1] != stem[-2]:
        return False
    return _cons_flags(stem)[-1]


def _ends_cvc(stem: str) -> bool:
    # consonant-vowel-consonant where the final consonant is not w, x
    # or y; guards adding back a trailing 'e' (hop -> hope is wrong,
    # fil -> file is right).
    if len(stem) < 3 or stem[-1] in "wxy":
        return False
    flags = _cons_flags(stem)
    return flags[-1] and not flags[-2] and flags[-3]


# (suffix, replacement) tables for steps 2 and 3; within each table the
# first matching suffix wins, so longer variants precede their tails
# (ational before tional, ization before ation).
_STEP2 = (
    ("ational", "ate"), ("tional", "tion"),
    ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"),
    ("bli", "ble"),
    ("alli", "al"), ("entli", "ent"), ("eli", "e"), ("ousli", "ous"),
    ("ization", "ize"), ("ation", "ate"), ("ator", "ate"),
    ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"), ("ousness", "ous"),
    ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
    ("logi", "log"),
)

_STEP3 = (
    ("icate", "ic"), ("ative", ""), ("alize", "al"),
    ("iciti", "ic"), ("ical", "ic"), ("ful", ""), ("ness", ""),
)

_STEP4 = (
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant",
    "ement", "ment", "ent", "ion", "ou", "ism", "ate", "iti",
    "ous", "ive", "ize",
)


def _step1ab(w: str) -> str:
    if w.endswith("s"):
        if w.endswith("sses"):
            w = w[:-2]
        elif w.endswith("ies"):
            w = w[:-3] + "i"
        elif not w.endswith("ss"):
            w = w[:-1]
    if w.endswith("eed"):
        if _measure(w[:-3]) > 0:
            w = w[:-1]
        return w
    for suffix in ("ed", "ing"):
        if w.endswith(suffix) and _has_vowel(w[: -len(suffix)]):
            w = w[: -len(suffix)]
            if w.endswith(("at", "bl", "iz")):
                return w + "e"
            if _ends_double_consonant(w) and w[-1] not in "lsz":
                return w[:-1]
            if _measure(w) == 1 and _ends_cvc(w):
                return w + "e"
            return w
    return w


def _step1c(w: str) -> str:
    if w.endswith("y") and _has_vowel(w[:-1]):
        return w[:-1] + "i"
    return w


def _apply_table(w: str, table) -> str:
    for suffix, repl in table:
        if w.endswith(suffix):
            stem = w[: -len(suffix)]
            if _measure(stem) > 0:
                return stem + repl
            return w
    return w


def _step4(w: str) -> str:
    for suffix in _STEP4:
        if w.endswith(suffix):
            stem = w[: -len(suffix)]
            if suffix == "ion" and not stem.endswith(("s", "t")):
                continue
            if _measure(stem) > 1:
                return stem
            return w
    return w


def _step5(w: str) -> str:
    if w.endswith("e"):
        m = _measure(w)
        if m > 1 or (m == 1 and not _ends_cvc(w[:-1])):
            w = w[:-1]
    if w.endswith("l") and _ends_double_consonant(w) and _measure(w) > 1:
        w = w[:-1]
    return w


@lru_cache(maxsize=1 << 18)
def stem(word: str) -> str:
    """Stem a single lowercase-able token."""
    w = word.lower()
    if len(w) <= 2:
        return w
    w = _step1ab(w)
    w = _step1c(w)
    w = _apply_table(w, _STEP2)
    w = _apply_table(w, _STEP3)
    w = _step4(w)
    w = _step5(w)
    return w
