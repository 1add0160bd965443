"""Line-delimited JSON corpus records and streaming readers.

A corpus record is one JSON object per line with string fields "id",
"title", "abstract" and an optional "keyphrases" list.  Malformed
lines are reported with their line number and do not abort the read.
Duplicate ids are a hard error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator

from .errors import DuplicateIdError


@dataclass
class CorpusRecord:
    id: str
    title: str
    abstract: str
    keyphrases: list[str] | None = None


@dataclass
class AugmentedRecord:
    id: str
    source_id: str
    masked_text: str
    present: list[str]
    absent_natural: list[str]
    absent_artificial: list[str]
    strategy: str
    epoch: int
    seed: int


@dataclass(frozen=True)
class LineError:
    lineno: int
    message: str


@dataclass
class IngestResult:
    records: list[CorpusRecord] = field(default_factory=list)
    errors: list[LineError] = field(default_factory=list)


def _require_str(obj: dict, key: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str):
        raise ValueError(f"field {key!r} missing or not a string")
    return value


def parse_corpus_record(line: str) -> CorpusRecord:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as e:
        raise ValueError(f"invalid JSON: {e}") from None
    if not isinstance(obj, dict):
        raise ValueError("line is not a JSON object")
    rec_id = _require_str(obj, "id")
    if not rec_id:
        raise ValueError("field 'id' must be non-empty")
    title = _require_str(obj, "title")
    abstract = _require_str(obj, "abstract")
    keyphrases = obj.get("keyphrases")
    if keyphrases is not None:
        if not isinstance(keyphrases, list) or not all(
            isinstance(p, str) for p in keyphrases
        ):
            raise ValueError("field 'keyphrases' must be a list of strings")
        keyphrases = list(keyphrases)
    return CorpusRecord(rec_id, title, abstract, keyphrases)


def corpus_record_to_json(rec: CorpusRecord) -> str:
    obj: dict = {"id": rec.id, "title": rec.title, "abstract": rec.abstract}
    if rec.keyphrases is not None:
        obj["keyphrases"] = rec.keyphrases
    return json.dumps(obj, ensure_ascii=False)


def iter_corpus(path) -> Iterator[tuple[int, CorpusRecord | LineError]]:
    """Stream (lineno, record-or-error) pairs; blank lines are skipped."""
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                yield lineno, parse_corpus_record(line)
            except ValueError as e:
                yield lineno, LineError(lineno, str(e))


def ingest(path) -> IngestResult:
    """Read a whole corpus file; collects line errors, raises on
    duplicate ids."""
    result = IngestResult()
    seen: set[str] = set()
    for lineno, item in iter_corpus(path):
        if isinstance(item, LineError):
            result.errors.append(item)
            continue
        if item.id in seen:
            raise DuplicateIdError(f"line {lineno}: duplicate id {item.id!r}")
        seen.add(item.id)
        result.records.append(item)
    return result


def parse_augmented_record(line: str) -> AugmentedRecord:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as e:
        raise ValueError(f"invalid JSON: {e}") from None
    if not isinstance(obj, dict):
        raise ValueError("line is not a JSON object")

    def str_list(key: str) -> list[str]:
        value = obj.get(key)
        if not isinstance(value, list) or not all(isinstance(p, str) for p in value):
            raise ValueError(f"field {key!r} must be a list of strings")
        return list(value)

    def integer(key: str) -> int:
        value = obj.get(key)
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValueError(f"field {key!r} must be an integer")
        return value

    return AugmentedRecord(
        id=_require_str(obj, "id"),
        source_id=_require_str(obj, "source_id"),
        masked_text=_require_str(obj, "masked_text"),
        present=str_list("present"),
        absent_natural=str_list("absent_natural"),
        absent_artificial=str_list("absent_artificial"),
        strategy=_require_str(obj, "strategy"),
        epoch=integer("epoch"),
        seed=integer("seed"),
    )


def augmented_record_to_json(rec: AugmentedRecord) -> str:
    return json.dumps(
        {
            "id": rec.id,
            "source_id": rec.source_id,
            "masked_text": rec.masked_text,
            "present": rec.present,
            "absent_natural": rec.absent_natural,
            "absent_artificial": rec.absent_artificial,
            "strategy": rec.strategy,
            "epoch": rec.epoch,
            "seed": rec.seed,
        },
        ensure_ascii=False,
    )
