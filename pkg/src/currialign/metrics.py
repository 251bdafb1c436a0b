"""Inter-annotator agreement and classifier evaluation metrics.

Agreement is measured two ways: the share of topics where two annotators pick
at least one common Knowledge Area, and a multi-label Cohen's kappa (the mean
over per-area binary kappas, skipping areas where both raters are constant
and identical).  Classifier quality uses macro-averaged precision, recall and
F1 with a k-fold cross-validation harness for the baseline model.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import dataclass

from .classify import classify_baseline, train_baseline
from .domain import KA_COUNT, KaLabelSet
from .errors import (
    EmptyInputError,
    LengthMismatchError,
    NoComparablePairsError,
    TooFewExamplesError,
    UndefinedKappaError,
    UnknownAnnotatorError,
)
from .ingest import AnnotationRecord

LabelSeq = list[KaLabelSet | None]


def overlap_agreement(a: LabelSeq, b: LabelSeq) -> tuple[float, int]:
    """Percentage of jointly annotated topics sharing at least one label."""
    if len(a) != len(b):
        raise LengthMismatchError(f"sequence lengths differ: {len(a)} vs {len(b)}")
    pairs = [(x, y) for x, y in zip(a, b) if x is not None and y is not None]
    if not pairs:
        raise NoComparablePairsError("annotators never labeled the same topic")
    agreeing = sum(1 for x, y in pairs if x.intersects(y))
    return 100.0 * agreeing / len(pairs), len(pairs)


def cohens_kappa(a: LabelSeq, b: LabelSeq) -> float:
    """Mean per-area binary kappa over jointly annotated topics.

    Areas where expected agreement is exactly 1 (both raters constant and
    identical) carry no information and are skipped.  If every area is
    skipped the sequences are necessarily identical and kappa is 1.
    """
    if len(a) != len(b):
        raise LengthMismatchError(f"sequence lengths differ: {len(a)} vs {len(b)}")
    pairs = [(x, y) for x, y in zip(a, b) if x is not None and y is not None]
    if not pairs:
        raise NoComparablePairsError("annotators never labeled the same topic")
    n = len(pairs)
    kappas = []
    for area in range(KA_COUNT):
        a_bits = [area in x for x, _ in pairs]
        b_bits = [area in y for _, y in pairs]
        pa = sum(a_bits) / n
        pb = sum(b_bits) / n
        p_observed = sum(1 for xa, xb in zip(a_bits, b_bits) if xa == xb) / n
        p_expected = pa * pb + (1 - pa) * (1 - pb)
        if p_expected == 1.0:
            continue
        kappas.append((p_observed - p_expected) / (1 - p_expected))
    if not kappas:
        if all(x.labels == y.labels for x, y in pairs):
            return 1.0
        raise UndefinedKappaError("all areas degenerate yet raters differ")
    return sum(kappas) / len(kappas)


@dataclass(frozen=True)
class AgreementMatrix:
    annotators: tuple[str, ...]
    overlap_pct: tuple[tuple[float, ...], ...]
    kappa: tuple[tuple[float, ...], ...]
    per_pair_n: tuple[tuple[int, ...], ...]
    avg_overlap: dict[str, float]
    avg_kappa: dict[str, float]

    def overlap_between(self, a: str, b: str) -> float:
        return self.overlap_pct[self.annotators.index(a)][self.annotators.index(b)]

    def kappa_between(self, a: str, b: str) -> float:
        return self.kappa[self.annotators.index(a)][self.annotators.index(b)]

    def to_json(self) -> dict:
        return {
            "annotators": list(self.annotators),
            "overlap_pct": [list(row) for row in self.overlap_pct],
            "kappa": [list(row) for row in self.kappa],
            "per_pair_n": [list(row) for row in self.per_pair_n],
            "avg_overlap": self.avg_overlap,
            "avg_kappa": self.avg_kappa,
        }

    def to_csv(self, which: str = "overlap") -> str:
        values = {"overlap": self.overlap_pct, "kappa": self.kappa, "n": self.per_pair_n}[which]
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["annotator"] + list(self.annotators))
        for name, row in zip(self.annotators, values):
            formatted = [f"{v:.6g}" for v in row]
            writer.writerow([name] + formatted)
        return out.getvalue()


def agreement_matrix(records: list[AnnotationRecord], annotators: list[str]) -> AgreementMatrix:
    """Pairwise overlap and kappa over jointly annotated topics."""
    for name in annotators:
        if not any(name in record.annotations for record in records):
            raise UnknownAnnotatorError(name)
    columns = {name: [record.annotations.get(name) for record in records] for name in annotators}
    size = len(annotators)
    overlap = [[0.0] * size for _ in range(size)]
    kappa = [[0.0] * size for _ in range(size)]
    counts = [[0] * size for _ in range(size)]
    for i, a in enumerate(annotators):
        present = sum(1 for v in columns[a] if v is not None)
        overlap[i][i] = 100.0 if present else math.nan
        kappa[i][i] = 1.0 if present else math.nan
        counts[i][i] = present
        for j in range(i + 1, size):
            b = annotators[j]
            pct, n = overlap_agreement(columns[a], columns[b])
            kp = cohens_kappa(columns[a], columns[b])
            overlap[i][j] = overlap[j][i] = pct
            kappa[i][j] = kappa[j][i] = kp
            counts[i][j] = counts[j][i] = n
    avg_overlap = {}
    avg_kappa = {}
    for i, name in enumerate(annotators):
        others = [j for j in range(size) if j != i]
        avg_overlap[name] = sum(overlap[i][j] for j in others) / len(others)
        avg_kappa[name] = sum(kappa[i][j] for j in others) / len(others)
    return AgreementMatrix(
        annotators=tuple(annotators),
        overlap_pct=tuple(tuple(row) for row in overlap),
        kappa=tuple(tuple(row) for row in kappa),
        per_pair_n=tuple(tuple(row) for row in counts),
        avg_overlap=avg_overlap,
        avg_kappa=avg_kappa,
    )


@dataclass(frozen=True)
class MacroScores:
    """Macro-averaged precision/recall/F1 plus the per-area triples."""

    precision: float
    recall: float
    f1: float
    per_class: tuple[tuple[float, float, float], ...]


@dataclass(frozen=True)
class EvalReport:
    macro_precision: float
    macro_recall: float
    macro_f1: float
    per_fold: tuple[MacroScores, ...]
    per_class: tuple[tuple[float, float, float], ...]

    def to_json(self) -> dict:
        return {
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "macro_f1": self.macro_f1,
            "per_fold": [
                {"precision": f.precision, "recall": f.recall, "f1": f.f1} for f in self.per_fold
            ],
            "per_class": [
                {"precision": p, "recall": r, "f1": f} for p, r, f in self.per_class
            ],
        }


def _tally(pred: list[KaLabelSet], gold: list[KaLabelSet]):
    tp = [0] * KA_COUNT
    fp = [0] * KA_COUNT
    fn = [0] * KA_COUNT
    for p, g in zip(pred, gold):
        for area in range(KA_COUNT):
            in_p, in_g = area in p, area in g
            if in_p and in_g:
                tp[area] += 1
            elif in_p:
                fp[area] += 1
            elif in_g:
                fn[area] += 1
    return tp, fp, fn


def _scores_from_tallies(tp, fp, fn) -> MacroScores:
    per_class = []
    for area in range(KA_COUNT):
        denom_p = tp[area] + fp[area]
        denom_r = tp[area] + fn[area]
        denom_f = 2 * tp[area] + fp[area] + fn[area]
        precision = tp[area] / denom_p if denom_p else 0.0
        recall = tp[area] / denom_r if denom_r else 0.0
        f1 = 2 * tp[area] / denom_f if denom_f else 0.0
        per_class.append((precision, recall, f1))
    return MacroScores(
        precision=sum(p for p, _, _ in per_class) / KA_COUNT,
        recall=sum(r for _, r, _ in per_class) / KA_COUNT,
        f1=sum(f for _, _, f in per_class) / KA_COUNT,
        per_class=tuple(per_class),
    )


def macro_metrics(pred: list[KaLabelSet], gold: list[KaLabelSet]) -> MacroScores:
    """Macro precision/recall/F1 with the zero-denominator-scores-zero rule."""
    if len(pred) != len(gold):
        raise LengthMismatchError(f"sequence lengths differ: {len(pred)} vs {len(gold)}")
    if not pred:
        raise EmptyInputError("nothing to score")
    return _scores_from_tallies(*_tally(pred, gold))


def kfold_splits(n: int, k: int, seed: int) -> list[list[int]]:
    """Deterministically shuffle 0..n-1 into k near-equal disjoint folds."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if n < k:
        raise TooFewExamplesError(f"{n} examples cannot fill {k} folds")
    order = list(range(n))
    random.Random(seed).shuffle(order)
    base, extra = divmod(n, k)
    folds = []
    start = 0
    for fold_index in range(k):
        size = base + (1 if fold_index < extra else 0)
        folds.append(order[start : start + size])
        start += size
    return folds


def kfold_evaluate(
    corpus: list[tuple[str, KaLabelSet]],
    k: int,
    seed: int,
    relative_threshold: float | None = None,
) -> EvalReport:
    """Cross-validate the baseline classifier over k disjoint folds.

    Pooled per-area tallies across all folds give the headline macro scores;
    per-fold macro triples are reported alongside.
    """
    folds = kfold_splits(len(corpus), k, seed)

    train_kwargs = {}
    if relative_threshold is not None:
        train_kwargs["relative_threshold"] = relative_threshold

    per_fold = []
    pooled_tp = [0] * KA_COUNT
    pooled_fp = [0] * KA_COUNT
    pooled_fn = [0] * KA_COUNT
    for fold in folds:
        hold_out = set(fold)
        train_split = [corpus[i] for i in range(len(corpus)) if i not in hold_out]
        model = train_baseline(train_split, **train_kwargs)
        pred = [classify_baseline(model, corpus[i][0]) for i in fold]
        gold = [corpus[i][1] for i in fold]
        tp, fp, fn = _tally(pred, gold)
        for area in range(KA_COUNT):
            pooled_tp[area] += tp[area]
            pooled_fp[area] += fp[area]
            pooled_fn[area] += fn[area]
        per_fold.append(_scores_from_tallies(tp, fp, fn))

    pooled = _scores_from_tallies(pooled_tp, pooled_fp, pooled_fn)
    return EvalReport(
        macro_precision=pooled.precision,
        macro_recall=pooled.recall,
        macro_f1=pooled.f1,
        per_fold=tuple(per_fold),
        per_class=pooled.per_class,
    )
