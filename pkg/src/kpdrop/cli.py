"""Command line surface.

Subcommands operate on line-delimited JSON files and process records
in input order.  Malformed lines are reported to stderr with their
line number and skipped; the run then exits 1 after finishing the
remaining records.  Randomized subcommands (augment, split-semi)
require --seed, so identical invocations produce byte-identical
output files.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterator, Sequence, TextIO

from . import corpusio, metrics, semisup
from .augment import AugmentedSample, DropConfig, apply_drop, rng_for_document, sample_drop_set
from .corpusio import AugmentedRecord, CorpusRecord, LineError
from .errors import DuplicateIdError, KpdropError
from .partition import Document, KeyphraseSet, make_document, partition
from .semisup import SplitSpec, TfidfScorer, build_df_table, rank_and_label, split_corpus
from .targets import format_one2many, format_one2one, format_one2set, sample_to_lists
from .textnorm import DEFAULT_MASK, TokenSeq, tokenize, validate_mask_token


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


def _error(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


class _RecordReader:
    """Streams valid records, reporting and counting bad lines."""

    def __init__(self, path: str):
        self.path = path
        self.n_errors = 0
        self._seen_ids: set[str] = set()

    def __iter__(self) -> Iterator[tuple[int, CorpusRecord]]:
        for lineno, item in corpusio.iter_corpus(self.path):
            if isinstance(item, LineError):
                self.n_errors += 1
                _error(f"{self.path}:{item.lineno}: {item.message}")
                continue
            if item.id in self._seen_ids:
                raise DuplicateIdError(
                    f"{self.path}:{lineno}: duplicate id {item.id!r}"
                )
            self._seen_ids.add(item.id)
            yield lineno, item


def _clean_gold(
    record: CorpusRecord, path: str, lineno: int, mask_token: str
) -> list[str] | None:
    """Gold phrases with unusable entries dropped (warned), or None
    when the record carries no gold list at all."""
    if record.keyphrases is None:
        return None
    kept: list[str] = []
    for raw in record.keyphrases:
        if len(tokenize(raw, mask_token)) == 0:
            _warn(
                f"{path}:{lineno}: dropping keyphrase {raw!r} of record "
                f"{record.id!r}: tokenizes to zero tokens"
            )
            continue
        kept.append(raw)
    return kept


def _doc_and_gold(
    record: CorpusRecord, path: str, lineno: int, mask_token: str
) -> tuple[Document, KeyphraseSet] | None:
    gold = _clean_gold(record, path, lineno, mask_token)
    if gold is None:
        _error(f"{path}:{lineno}: record {record.id!r} has no 'keyphrases' field")
        return None
    doc = make_document(record.id, record.title, record.abstract, mask_token)
    return doc, partition(doc, gold, mask_token)


def _open_out(path: str) -> TextIO:
    return open(path, "w", encoding="utf-8", newline="\n")


# each sample becomes one output record; lists are stored in canonical
# target order so downstream formatting needs no original document
def _sample_to_record(
    sample: AugmentedSample, strategy: str, epoch: int, seed: int, rec_id: str
) -> AugmentedRecord:
    present, artificial, natural = sample_to_lists(sample)
    return AugmentedRecord(
        id=rec_id,
        source_id=sample.original_id,
        masked_text=sample.doc_new.full.text,
        present=list(present),
        absent_natural=list(natural),
        absent_artificial=list(artificial),
        strategy=strategy,
        epoch=epoch,
        seed=seed,
    )


def _sample_from_record(rec: AugmentedRecord, mask_token: str) -> AugmentedSample:
    """Rebuild enough of a sample to format targets from a record."""

    def seqs(texts: list[str]) -> tuple[TokenSeq, ...]:
        return tuple(tokenize(t, mask_token) for t in texts)

    present = seqs(rec.present)
    artificial = seqs(rec.absent_artificial)
    starts = {p.stems: i for i, p in enumerate(present + artificial)}
    full = tokenize(rec.masked_text, mask_token)
    return AugmentedSample(
        original_id=rec.source_id,
        doc_new=Document(rec.id, TokenSeq(()), full, full),
        present_new=present,
        absent_natural=seqs(rec.absent_natural),
        absent_artificial=artificial,
        mask_spans=(),
        occurrence_starts=starts,
    )


def _cmd_partition(args: argparse.Namespace) -> int:
    reader = _RecordReader(args.input)
    with _open_out(args.output) as out:
        for lineno, record in reader:
            pair = _doc_and_gold(record, args.input, lineno, args.mask_token)
            if pair is None:
                reader.n_errors += 1
                continue
            doc, kps = pair
            out.write(
                json.dumps(
                    {
                        "id": record.id,
                        "present": [pp.phrase.text for pp in kps.present],
                        "absent": [p.text for p in kps.absent],
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
    return _finish(reader)


def _cmd_augment(args: argparse.Namespace) -> int:
    cfg = DropConfig(rate=args.rate, mask_token=args.mask_token, seed=args.seed)
    reader = _RecordReader(args.input)
    with _open_out(args.output) as out:

        def emit(sample: AugmentedSample, rec_id: str) -> None:
            record = _sample_to_record(
                sample, args.strategy, args.epoch, args.seed, rec_id
            )
            out.write(corpusio.augmented_record_to_json(record) + "\n")

        for lineno, record in reader:
            pair = _doc_and_gold(record, args.input, lineno, args.mask_token)
            if pair is None:
                reader.n_errors += 1
                continue
            doc, kps = pair
            if args.strategy == "append":
                emit(apply_drop(doc, kps, (), cfg), record.id)
            rng = rng_for_document(args.seed, doc.id, args.epoch)
            dropped = sample_drop_set(kps, cfg, rng)
            sample = apply_drop(doc, kps, dropped, cfg)
            rec_id = record.id + "#aug" if args.strategy == "append" else record.id
            emit(sample, rec_id)
    return _finish(reader)


def _cmd_format_targets(args: argparse.Namespace) -> int:
    n_errors = 0
    with open(args.input, encoding="utf-8") as fh, _open_out(args.output) as out:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                sample, rec_id, source = _load_formattable(line, args.mask_token)
            except (ValueError, KpdropError) as e:
                n_errors += 1
                _error(f"{args.input}:{lineno}: {e}")
                continue
            for obj in _format_objects(sample, rec_id, source, args.format):
                out.write(json.dumps(obj, ensure_ascii=False) + "\n")
    if n_errors:
        _error(f"{n_errors} line(s) skipped")
        return 1
    return 0


def _load_formattable(
    line: str, mask_token: str
) -> tuple[AugmentedSample, str, str]:
    """Accepts an augmented record or a raw corpus record line."""
    obj = json.loads(line)
    if isinstance(obj, dict) and "masked_text" in obj:
        rec = corpusio.parse_augmented_record(line)
        return _sample_from_record(rec, mask_token), rec.id, rec.masked_text
    record = corpusio.parse_corpus_record(line)
    if record.keyphrases is None:
        raise ValueError(f"record {record.id!r} has no 'keyphrases' field")
    usable = [p for p in record.keyphrases if len(tokenize(p, mask_token)) > 0]
    doc = make_document(record.id, record.title, record.abstract, mask_token)
    kps = partition(doc, usable, mask_token)
    sample = apply_drop(doc, kps, (), DropConfig(mask_token=mask_token))
    return sample, record.id, doc.full.text


def _format_objects(
    sample: AugmentedSample, rec_id: str, source: str, fmt: str
) -> Iterator[dict]:
    if fmt == "one2many":
        yield {"id": rec_id, "source": source, "target": format_one2many(sample)}
    elif fmt == "one2one":
        for phrase in format_one2one(sample):
            yield {"id": rec_id, "source": source, "target": phrase}
    else:
        target = format_one2set(sample)
        yield {
            "id": rec_id,
            "source": source,
            "present": list(target.present),
            "absent": list(target.absent),
        }


def _cmd_score(args: argparse.Namespace) -> int:
    predictions: dict[str, list[str]] = {}
    with open(args.predictions, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            obj = json.loads(line)
            if (
                not isinstance(obj, dict)
                or not isinstance(obj.get("id"), str)
                or not isinstance(obj.get("predictions"), list)
                or not all(isinstance(p, str) for p in obj["predictions"])
            ):
                _error(
                    f"{args.predictions}:{lineno}: expected "
                    '{"id": str, "predictions": [str]}'
                )
                return 1
            if obj["id"] in predictions:
                raise DuplicateIdError(
                    f"{args.predictions}:{lineno}: duplicate id {obj['id']!r}"
                )
            predictions[obj["id"]] = obj["predictions"]

    reader = _RecordReader(args.gold)
    sums = {name: 0.0 for name in metrics.METRIC_NAMES}
    n_scored = 0
    n_skipped = 0
    matched_ids: set[str] = set()
    for lineno, record in reader:
        pair = _doc_and_gold(record, args.gold, lineno, args.mask_token)
        if pair is None:
            reader.n_errors += 1
            continue
        doc, kps = pair
        phrases = predictions.get(record.id, [])
        matched_ids.add(record.id)
        values = metrics.score_document(
            phrases, doc, kps, args.category, args.mask_token
        )
        if values is None:
            n_skipped += 1
            continue
        n_scored += 1
        for name in metrics.METRIC_NAMES:
            sums[name] += values[name]

    unknown = set(predictions) - matched_ids
    if unknown:
        _error(
            f"{len(unknown)} prediction id(s) not in the gold corpus, "
            f"e.g. {sorted(unknown)[0]!r}"
        )
        return 1
    print(f"category {args.category}")
    print(f"docs_scored {n_scored}")
    print(f"docs_skipped {n_skipped}")
    for name in metrics.METRIC_NAMES:
        value = sums[name] / n_scored if n_scored else 0.0
        print(f"{name} {value:.4f}")
    return _finish(reader)


def _cmd_split_semi(args: argparse.Namespace) -> int:
    reader = _RecordReader(args.input)
    records = [record for _, record in reader]
    labeled, unlabeled = split_corpus(
        records, SplitSpec(n_labeled=args.n_labeled, seed=args.seed)
    )
    for path, subset in ((args.labeled, labeled), (args.unlabeled, unlabeled)):
        with _open_out(path) as out:
            for record in subset:
                out.write(corpusio.corpus_record_to_json(record) + "\n")
    return _finish(reader)


def _cmd_label_synthetic(args: argparse.Namespace) -> int:
    # first pass: document frequencies (errors reported on second pass)
    def docs() -> Iterator[Document]:
        for _, item in corpusio.iter_corpus(args.input):
            if isinstance(item, LineError):
                continue
            yield make_document(item.id, item.title, item.abstract, args.mask_token)

    scorer = TfidfScorer(build_df_table(docs()))
    reader = _RecordReader(args.input)
    with _open_out(args.output) as out:
        for _, record in reader:
            doc = make_document(
                record.id, record.title, record.abstract, args.mask_token
            )
            labels = rank_and_label(doc, args.top_k, scorer)
            record.keyphrases = [c.text for c in labels]
            out.write(corpusio.corpus_record_to_json(record) + "\n")
    return _finish(reader)


def _finish(reader: _RecordReader) -> int:
    if reader.n_errors:
        _error(f"{reader.n_errors} record(s) skipped or invalid")
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kpdrop",
        description="Keyphrase corpus toolkit: partition, dropout "
        "augmentation, target formatting, scoring, and semi-supervised "
        "splitting/labeling over line-delimited JSON corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_mask(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--mask-token",
            default=DEFAULT_MASK,
            help="reserved mask token (default %(default)s)",
        )

    p = sub.add_parser("partition", help="split gold keyphrases into present/absent")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    add_mask(p)
    p.set_defaults(func=_cmd_partition)

    p = sub.add_parser("augment", help="keyphrase dropout augmentation")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--rate", type=float, default=0.7,
                   help="drop probability per present phrase (default %(default)s)")
    p.add_argument("--strategy", required=True, choices=("replace", "append"))
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--epoch", type=int, default=0,
                   help="vary the drop sample per epoch (default %(default)s)")
    add_mask(p)
    p.set_defaults(func=_cmd_augment)

    p = sub.add_parser(
        "format-targets",
        help="serialize training targets from augmented or raw records",
    )
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--format", required=True,
                   choices=("one2many", "one2one", "one2set"))
    add_mask(p)
    p.set_defaults(func=_cmd_format_targets)

    p = sub.add_parser("score", help="macro-averaged ranked keyphrase metrics")
    p.add_argument("--gold", required=True)
    p.add_argument("--predictions", required=True)
    p.add_argument("--category", required=True, choices=metrics.CATEGORIES)
    add_mask(p)
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("split-semi", help="seeded low-resource/unlabeled split")
    p.add_argument("--input", required=True)
    p.add_argument("--labeled", required=True)
    p.add_argument("--unlabeled", required=True)
    p.add_argument("--n-labeled", type=int, default=semisup.DEFAULT_N_LABELED)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=_cmd_split_semi)

    p = sub.add_parser(
        "label-synthetic", help="attach top-k extracted keyphrases to records"
    )
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--top-k", type=int, default=semisup.DEFAULT_TOP_K)
    add_mask(p)
    p.set_defaults(func=_cmd_label_synthetic)
    return parser


def run_pipeline(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        validate_mask_token(getattr(args, "mask_token", DEFAULT_MASK))
        return args.func(args)
    except (KpdropError, ValueError, OSError) as e:
        _error(str(e))
        return 1


def main(argv: Sequence[str] | None = None) -> int:
    return run_pipeline(argv)


if __name__ == "__main__":
    sys.exit(main())
