"""Ranked scoring, pinned by hand-computed cases and an independent
set-based oracle."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import example_pair
from kpdrop.errors import DuplicateIdError, ScoringError
from kpdrop.metrics import (
    METRIC_NAMES,
    Prediction,
    categorize_predictions,
    dedup_by_stem,
    f1_at_5c,
    f1_at_k,
    f1_at_m,
    match,
    recall_at_k,
    score_corpus,
    score_document,
)
from kpdrop.partition import make_document, partition
from kpdrop.textnorm import tokenize


# ---------------------------------------------------------------------
# independent oracle: exact arithmetic over stem-key sets


def _key(phrase: str) -> tuple[str, ...]:
    return tokenize(phrase).stems


def _oracle_keys(phrases) -> list[tuple[str, ...]]:
    out, seen = [], set()
    for p in phrases:
        k = _key(p)
        if k and k not in seen:
            seen.add(k)
            out.append(k)
    return out


def _oracle_counts(preds, gold, cutoff=None):
    pred_keys = _oracle_keys(preds)
    if cutoff is not None:
        pred_keys = pred_keys[:cutoff]
    gold_keys = set(_oracle_keys(gold))
    n_matched = len(set(pred_keys) & gold_keys)
    return n_matched, len(pred_keys), len(gold_keys)


def _oracle_prf(n_matched, pred_denom, n_gold):
    p = Fraction(n_matched, pred_denom) if pred_denom else Fraction(0)
    r = Fraction(n_matched, n_gold) if n_gold else Fraction(0)
    f = 2 * p * r / (p + r) if p + r else Fraction(0)
    return float(p), float(r), float(f)


def oracle_f1_at_m(preds, gold):
    return _oracle_prf(*_oracle_counts(preds, gold))[2]


def oracle_f1_at_k(preds, gold, k):
    return _oracle_prf(*_oracle_counts(preds, gold, cutoff=k))[2]


def oracle_f1_at_5c(preds, gold):
    m, _, n_gold = _oracle_counts(preds, gold, cutoff=5)
    p = Fraction(m, 5)
    r = Fraction(m, n_gold) if n_gold else Fraction(0)
    return float(2 * p * r / (p + r)) if p + r else 0.0


def oracle_recall_at_k(preds, gold, k):
    m, _, n_gold = _oracle_counts(preds, gold, cutoff=k)
    return float(Fraction(m, n_gold)) if n_gold else 0.0


# ---------------------------------------------------------------------


class TestMatch:
    def test_flags_align_with_dedup(self):
        preds = ["hearing aids", "hearing aid", "auditory model"]
        assert dedup_by_stem(preds) == ["hearing aids", "auditory model"]
        assert match(preds, ["hearing aid"]) == [True, False]

    def test_each_gold_claimed_once(self):
        assert match(["model", "models"], ["model"]) == [True]  # dedup first
        assert match(["model", "graphs"], ["models", "graph"]) == [True, True]

    def test_stemmed_matching(self):
        assert match(["training networks"], ["trained network"]) == [True]

    def test_empty_sides(self):
        assert match([], ["a"]) == []
        assert match(["a"], []) == [False]


class TestHandComputedScores:
    def test_two_preds_three_gold(self):
        score = f1_at_m(["alpha", "delta"], ["alpha", "beta", "gamma"])
        assert score.precision == pytest.approx(0.5, abs=1e-12)
        assert score.recall == pytest.approx(1 / 3, abs=1e-12)
        assert score.f1 == pytest.approx(0.4, abs=1e-12)
        assert (score.n_pred, score.n_gold, score.n_matched) == (2, 3, 1)

    def test_f1_at_5_does_not_pad(self):
        score = f1_at_k(["alpha"], ["alpha"], 5)
        assert score.precision == 1.0 and score.recall == 1.0 and score.f1 == 1.0

    def test_f1_at_5c_pads_the_denominator(self):
        score = f1_at_5c(["alpha"], ["alpha"])
        assert score.precision == pytest.approx(0.2, abs=1e-12)
        assert score.recall == 1.0
        assert score.f1 == pytest.approx(1 / 3, abs=1e-12)

    def test_truncation(self):
        preds = ["p1", "alpha", "p3", "p4", "p5", "beta", "p7"]
        gold = ["alpha", "beta", "gamma"]
        full = f1_at_m(preds, gold)
        assert full.n_matched == 2
        top5 = f1_at_k(preds, gold, 5)
        assert top5.n_matched == 1
        assert top5.precision == pytest.approx(0.2, abs=1e-12)
        assert top5.recall == pytest.approx(1 / 3, abs=1e-12)
        assert top5.f1 == pytest.approx(0.25, abs=1e-12)
        assert recall_at_k(preds, gold, 10) == pytest.approx(2 / 3, abs=1e-12)

    def test_empty_predictions_score_zero(self):
        score = f1_at_m([], ["alpha"])
        assert (score.precision, score.recall, score.f1) == (0.0, 0.0, 0.0)

    def test_empty_gold_scores_zero(self):
        score = f1_at_m(["alpha"], [])
        assert (score.recall, score.f1) == (0.0, 0.0)
        assert score.n_gold == 0

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            f1_at_k(["a"], ["a"], 0)


def _random_instance(rng: random.Random):
    vocab = [
        "model", "models", "graph", "graphs", "neural net", "neural nets",
        "deep learning", "entropy", "speech", "hearing loss", "index",
        "parsing", "parse trees", "kernel", "kernels",
    ]
    preds = [rng.choice(vocab) for _ in range(rng.randint(0, 8))]
    gold = [rng.choice(vocab) for _ in range(rng.randint(0, 8))]
    return preds, gold


class TestOracleAgreement:
    def test_random_instances(self):
        rng = random.Random(99)
        for _ in range(500):
            preds, gold = _random_instance(rng)
            assert f1_at_m(preds, gold).f1 == pytest.approx(
                oracle_f1_at_m(preds, gold), abs=1e-12
            )
            assert f1_at_k(preds, gold, 5).f1 == pytest.approx(
                oracle_f1_at_k(preds, gold, 5), abs=1e-12
            )
            assert f1_at_5c(preds, gold).f1 == pytest.approx(
                oracle_f1_at_5c(preds, gold), abs=1e-12
            )
            for k in (10, 50):
                assert recall_at_k(preds, gold, k) == pytest.approx(
                    oracle_recall_at_k(preds, gold, k), abs=1e-12
                )

    def test_cutoff_properties(self):
        rng = random.Random(7)
        for _ in range(300):
            preds, gold = _random_instance(rng)
            assert f1_at_5c(preds, gold).f1 <= f1_at_k(preds, gold, 5).f1 + 1e-12
            assert (
                recall_at_k(preds, gold, 50) >= recall_at_k(preds, gold, 10) - 1e-12
            )
            if len(dedup_by_stem(preds)) <= 5:
                assert f1_at_k(preds, gold, 5).f1 == pytest.approx(
                    f1_at_m(preds, gold).f1, abs=1e-12
                )


class TestCategorization:
    def test_split_against_original_document(self):
        doc, _ = example_pair()
        split = categorize_predictions(
            ["auditory models", "hearing aid", "speech intelligibility"], doc
        )
        assert split["present"] == ["auditory models", "speech intelligibility"]
        assert split["absent"] == ["hearing aid"]


class TestScoreCorpus:
    def _corpus(self):
        docs = [
            ("d1", "alpha beta", "alpha beta appears here", ["alpha beta", "zeta"]),
            ("d2", "gamma only", "gamma document body", ["gamma", "missing topic"]),
            ("d3", "no gold present", "entirely different words", ["query topic"]),
        ]
        corpus = []
        for doc_id, title, body, gold in docs:
            doc = make_document(doc_id, title, body)
            corpus.append((doc, partition(doc, gold)))
        return corpus

    def test_present_category_macro(self):
        corpus = self._corpus()
        preds = [
            Prediction("d1", ("alpha beta", "gamma")),
            Prediction("d2", ("gamma",)),
            Prediction("d3", ("query topic",)),
        ]
        report = score_corpus(preds, corpus, "present")
        # d3 has no present gold -> skipped
        assert report.n_docs_scored == 2 and report.n_docs_skipped == 1
        assert report.macro["f1_at_m"] == pytest.approx(1.0)
        assert [doc_id for doc_id, _ in report.per_doc] == ["d1", "d2"]

    def test_absent_category_macro(self):
        corpus = self._corpus()
        preds = [
            Prediction("d1", ("zeta",)),
            Prediction("d2", ("other",)),
            Prediction("d3", ("query topics",)),
        ]
        report = score_corpus(preds, corpus, "absent")
        assert report.n_docs_scored == 3 and report.n_docs_skipped == 0
        assert report.macro["f1_at_m"] == pytest.approx((1.0 + 0.0 + 1.0) / 3)

    def test_missing_prediction_scores_zero(self):
        corpus = self._corpus()
        report = score_corpus([Prediction("d1", ("alpha beta",))], corpus, "present")
        assert report.n_docs_scored == 2
        values = dict(report.per_doc)
        assert values["d2"]["f1_at_m"] == 0.0

    def test_duplicate_prediction_rejected(self):
        corpus = self._corpus()
        preds = [Prediction("d1", ("a",)), Prediction("d1", ("b",))]
        with pytest.raises(DuplicateIdError):
            score_corpus(preds, corpus, "present")

    def test_unknown_doc_rejected(self):
        with pytest.raises(ScoringError):
            score_corpus([Prediction("nope", ("a",))], self._corpus(), "present")

    def test_bad_category_rejected(self):
        with pytest.raises(ValueError):
            score_corpus([], self._corpus(), "both")

    def test_report_has_all_metrics(self):
        report = score_corpus([], self._corpus(), "present")
        assert set(report.macro) == set(METRIC_NAMES)


def test_score_document_skips_empty_gold():
    doc = make_document("d", "alpha", "alpha body")
    kps = partition(doc, ["alpha"])
    assert score_document(["alpha"], doc, kps, "absent") is None
