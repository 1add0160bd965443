"""Shared fixtures: the worked-example document and synthetic corpora
with phrases planted at known, non-interfering positions."""

from __future__ import annotations

import random

from kpdrop.partition import Document, KeyphraseSet, make_document, partition

EX_TITLE = "The Hearing-Aid Speech Perception Index (HASPI)"
EX_ABSTRACT = (
    "This paper presents a new index for predicting speech intelligibility "
    "for normal-hearing and hearing-impaired listeners. The Hearing-Aid Speech "
    "Perception Index (HASPI) is based on a model of the auditory periphery "
    "that incorporates changes due to hearing loss. The index compares the "
    "envelope and temporal fine structure outputs of the auditory model for a "
    "reference signal to the outputs of the model for the signal under test. "
    "The auditory model for the reference signal is set for normal hearing, "
    "while the model for the test signal incorporates the peripheral hearing "
    "loss."
)
EX_GOLD = [
    "Speech intelligibility",
    "Auditory model",
    "Hearing loss",
    "Hearing aids",
    "Intelligibility index",
]
EX_PRESENT = ["speech intelligibility", "auditory model", "hearing loss"]
EX_ABSENT = ["hearing aids", "intelligibility index"]

# normalized rendering after dropping "auditory model": both occurrences
# collapse to one mask each, every other token is untouched
EX_MASKED = (
    "the hearing-aid speech perception index haspi this paper presents "
    "a new index for predicting speech intelligibility for "
    "normal-hearing and hearing-impaired listeners the hearing-aid "
    "speech perception index haspi is based on a model of the auditory "
    "periphery that incorporates changes due to hearing loss the index "
    "compares the envelope and temporal fine structure outputs of the "
    "[MASK] for a reference signal to the outputs of the model for the "
    "signal under test the [MASK] for the reference signal is set for "
    "normal hearing while the model for the test signal incorporates "
    "the peripheral hearing loss"
)


def example_pair() -> tuple[Document, KeyphraseSet]:
    doc = make_document("ex1", EX_TITLE, EX_ABSTRACT)
    return doc, partition(doc, EX_GOLD)


class PlantedDoc:
    """A synthetic record whose phrase occurrences are fully controlled.

    Present phrases use words unique to the phrase, each occurrence is
    separated from everything else by filler words, and absent phrases
    use words that never appear in the document.  Dropping any subset
    of present phrases therefore cannot disturb the others.
    """

    def __init__(self, doc_id: str, rng: random.Random):
        self.id = doc_id
        n_present = rng.randint(1, 5)
        n_absent = rng.randint(0, 3)
        self.present = [
            " ".join(f"p{doc_id}x{i}x{j}" for j in range(rng.randint(1, 3)))
            for i in range(n_present)
        ]
        self.absent = [
            " ".join(f"a{doc_id}x{i}x{j}" for j in range(rng.randint(1, 2)))
            for i in range(n_absent)
        ]
        fillers = [f"fill{rng.randint(0, 9)}" for _ in range(4)]
        body: list[str] = [rng.choice(fillers)]
        plants: list[str] = []
        for phrase in self.present:
            for _ in range(rng.randint(1, 2)):
                plants.append(phrase)
        rng.shuffle(plants)
        for phrase in plants:
            body.append(phrase)
            body.append(rng.choice(fillers))  # separator after every plant
        self.title = f"{rng.choice(fillers)} {rng.choice(fillers)}"
        self.abstract = " ".join(body)
        self.gold = self.present + self.absent
        rng.shuffle(self.gold)

    def record(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "abstract": self.abstract,
            "keyphrases": self.gold,
        }

    def pair(self) -> tuple[Document, KeyphraseSet]:
        doc = make_document(self.id, self.title, self.abstract)
        return doc, partition(doc, self.gold)


def planted_corpus(n_docs: int, seed: int) -> list[PlantedDoc]:
    rng = random.Random(seed)
    return [PlantedDoc(f"d{i}", rng) for i in range(n_docs)]
