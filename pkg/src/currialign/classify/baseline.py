"""Native TF-IDF nearest-centroid classifier.

Stands in for the remote classification model when running offline.  Each
Knowledge Area gets one centroid: the unit-normalized mean of the TF-IDF
vectors of all training texts labeled with that area.  Classification scores
a text against all nine centroids by cosine similarity and keeps every area
whose score reaches a fixed fraction of the best score, so multi-label
outputs fall out naturally while the argmax is always included.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..domain import KA_COUNT, KaLabelSet
from ..errors import EmptyCorpusError
from .pipeline import ClassifiedTopic

MODEL_FORMAT_VERSION = 1
DEFAULT_RELATIVE_THRESHOLD = 0.75

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def tokenize(text: str) -> list[str]:
    """Lowercase, split on non-alphanumerics, drop tokens shorter than 2."""
    return [t for t in _TOKEN_RE.findall(text.lower()) if len(t) >= 2]


@dataclass(frozen=True)
class BaselineModel:
    vocabulary: dict[str, int]
    idf: np.ndarray
    centroids: np.ndarray  # shape (9, |vocabulary|), rows unit-norm or zero
    relative_threshold: float

    def __post_init__(self):
        if not 0 < self.relative_threshold <= 1:
            raise ValueError("relative_threshold must lie in (0, 1]")


def _doc_vector(tokens: list[str], vocabulary: dict[str, int], idf: np.ndarray) -> dict[int, float]:
    """Sparse L2-normalized TF-IDF vector as {term index: weight}."""
    counts = Counter(t for t in tokens if t in vocabulary)
    if not counts:
        return {}
    vec = {vocabulary[t]: c * idf[vocabulary[t]] for t, c in counts.items()}
    norm = math.sqrt(math.fsum(v * v for v in vec.values()))
    if norm == 0:
        return {}
    return {i: v / norm for i, v in vec.items()}


def train_baseline(
    corpus: list[tuple[str, KaLabelSet]],
    relative_threshold: float = DEFAULT_RELATIVE_THRESHOLD,
) -> BaselineModel:
    """Fit vocabulary, smoothed IDF and the nine class centroids."""
    if not corpus:
        raise EmptyCorpusError("training corpus is empty")
    doc_tokens = [tokenize(text) for text, _ in corpus]
    vocabulary: dict[str, int] = {}
    df = Counter()
    for tokens in doc_tokens:
        for term in set(tokens):
            if term not in vocabulary:
                vocabulary[term] = len(vocabulary)
            df[term] += 1
    n_docs = len(corpus)
    idf = np.zeros(len(vocabulary))
    for term, index in vocabulary.items():
        idf[index] = math.log((1 + n_docs) / (1 + df[term])) + 1.0

    sums = np.zeros((KA_COUNT, len(vocabulary)))
    members = np.zeros(KA_COUNT)
    for tokens, (_, labels) in zip(doc_tokens, corpus):
        vec = _doc_vector(tokens, vocabulary, idf)
        if not vec:
            continue
        for area in labels:
            members[area] += 1
            row = sums[area]
            for index, value in vec.items():
                row[index] += value
    centroids = np.zeros_like(sums)
    for area in range(KA_COUNT):
        if members[area] == 0:
            continue
        mean = sums[area] / members[area]
        norm = np.linalg.norm(mean)
        if norm > 0:
            centroids[area] = mean / norm
    return BaselineModel(
        vocabulary=vocabulary,
        idf=idf,
        centroids=centroids,
        relative_threshold=relative_threshold,
    )


def classify_baseline(model: BaselineModel, text: str) -> KaLabelSet:
    """Cosine-score against all centroids; keep areas near the best score.

    Texts with no vocabulary overlap fall back to the Miscellaneous area.
    """
    vec = _doc_vector(tokenize(text), model.vocabulary, model.idf)
    if not vec:
        return KaLabelSet.of(0)
    scores = np.zeros(KA_COUNT)
    for index, value in vec.items():
        scores += model.centroids[:, index] * value
    best = scores.max()
    if best <= 0:
        return KaLabelSet.of(0)
    labels = frozenset(int(j) for j in range(KA_COUNT) if scores[j] >= model.relative_threshold * best)
    return KaLabelSet(labels)


def score_baseline(model: BaselineModel, text: str) -> np.ndarray:
    """Raw cosine scores per Knowledge Area (diagnostics and tests)."""
    vec = _doc_vector(tokenize(text), model.vocabulary, model.idf)
    scores = np.zeros(KA_COUNT)
    for index, value in vec.items():
        scores += model.centroids[:, index] * value
    return scores


class BaselineClassifier:
    """Adapter giving the trained model the batch-classification interface."""

    backend_name = "baseline"
    max_concurrency = 1

    def __init__(self, model: BaselineModel):
        self.model = model

    def classify_text(self, text: str) -> ClassifiedTopic:
        return ClassifiedTopic(text=text, labels=classify_baseline(self.model, text), backend="baseline")


def save_model(model: BaselineModel, path: str | Path) -> None:
    terms = sorted(model.vocabulary, key=model.vocabulary.get)
    payload = {
        "format_version": MODEL_FORMAT_VERSION,
        "relative_threshold": model.relative_threshold,
        "terms": terms,
        "idf": model.idf.tolist(),
        "centroids": model.centroids.tolist(),
    }
    Path(path).write_text(json.dumps(payload) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> BaselineModel:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    version = payload.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model format version {version!r}")
    return BaselineModel(
        vocabulary={t: i for i, t in enumerate(payload["terms"])},
        idf=np.asarray(payload["idf"], dtype=float),
        centroids=np.asarray(payload["centroids"], dtype=float),
        relative_threshold=float(payload["relative_threshold"]),
    )
