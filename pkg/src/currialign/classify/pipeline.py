"""Text normalization and batch plumbing shared by both classifier backends."""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Protocol

from ..domain import KaLabelSet
from ..errors import BatchItemError, EmptyResponseError, UnparseableReplyError


@dataclass(frozen=True)
class ClassifiedTopic:
    text: str
    labels: KaLabelSet
    backend: str
    raw_response: str | None = None


class TopicClassifier(Protocol):
    backend_name: str
    max_concurrency: int

    def classify_text(self, text: str) -> ClassifiedTopic: ...


_KD_ID_RE = re.compile(r"^[A-Z]\d{4}:\s*")
_KNOWLEDGE_OF_RE = re.compile(r"^knowledge of\s+", re.IGNORECASE)
_BULLET_RE = re.compile(r"^\s*(?:[-*•·]+|\d+[.)])\s*")
_LABEL_DIGIT_RE = re.compile(r"(?<!\d)[0-8](?!\d)")


def strip_kd_prefix(text: str) -> str:
    """Drop a leading id token and one leading "Knowledge of"; lowercase."""
    out = _KD_ID_RE.sub("", text.strip(), count=1)
    out = _KNOWLEDGE_OF_RE.sub("", out, count=1)
    return out.strip().lower()


def parse_topic_list(raw: str) -> list[str]:
    """Turn a one-topic-per-line reply into clean, deduplicated topics."""
    topics: list[str] = []
    seen: set[str] = set()
    for line in raw.splitlines():
        topic = _BULLET_RE.sub("", line).strip().lower()
        if topic and topic not in seen:
            seen.add(topic)
            topics.append(topic)
    if not topics:
        raise EmptyResponseError("model reply contained no topics")
    return topics


def parse_label_reply(raw: str) -> KaLabelSet:
    """Collect every standalone digit 0..8 in the reply into a label set."""
    digits = _LABEL_DIGIT_RE.findall(raw)
    if not digits:
        raise UnparseableReplyError(raw)
    return KaLabelSet(frozenset(int(d) for d in digits))


def classify_batch(texts: list[str], classifier: TopicClassifier) -> list[ClassifiedTopic]:
    """Classify texts in input order, raising on any per-item failure."""
    results, failures = classify_batch_results(texts, classifier)
    if failures:
        raise BatchItemError(failures)
    return [r for r in results if r is not None]


def classify_batch_results(
    texts: list[str], classifier: TopicClassifier
) -> tuple[list[ClassifiedTopic | None], list[tuple[int, Exception]]]:
    """Order-preserving batch classification with per-item failure capture.

    The remote backend runs at most ``classifier.max_concurrency`` requests at
    once; results always line up with the input indices.
    """
    results: list[ClassifiedTopic | None] = [None] * len(texts)
    failures: list[tuple[int, Exception]] = []
    if not texts:
        return results, failures

    def work(index: int) -> None:
        try:
            results[index] = classifier.classify_text(texts[index])
        except Exception as exc:  # noqa: BLE001 - per-item capture by contract
            failures.append((index, exc))

    workers = max(1, getattr(classifier, "max_concurrency", 1))
    if workers == 1 or len(texts) == 1:
        for i in range(len(texts)):
            work(i)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(work, range(len(texts))))
    failures.sort(key=lambda pair: pair[0])
    return results, failures
