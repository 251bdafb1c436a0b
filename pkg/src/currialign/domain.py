"""Knowledge Area taxonomy and the distribution math used everywhere else.

Nine Knowledge Areas partition the cybersecurity competency space: the eight
CSEC2017 areas plus a catch-all "Miscellaneous" area at index 0.  A label set
is a non-empty subset of the nine indices assigned to one unit of text; a
distribution is a normalized weight vector over the nine areas.  Everything in
this module is an immutable value and every function is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import AllZeroError, NonPositiveEpsilonError

KA_COUNT = 9

KA_NAMES = (
    "Miscellaneous",
    "Data",
    "Software",
    "Component",
    "Connection",
    "System",
    "Human",
    "Organizational",
    "Societal",
)

#: Absolute per-component tolerance for distribution equality checks.
SUM_TOLERANCE = 1e-9

#: Default additive smoothing for the KL divergence.
DEFAULT_KL_EPSILON = 1e-9


@dataclass(frozen=True)
class KnowledgeArea:
    """One of the nine competency areas, identified by a fixed index."""

    index: int
    name: str

    def __post_init__(self):
        if not 0 <= self.index < KA_COUNT:
            raise ValueError(f"knowledge area index out of range: {self.index}")
        if KA_NAMES[self.index] != self.name:
            raise ValueError(f"index {self.index} is named {KA_NAMES[self.index]!r}, not {self.name!r}")


KNOWLEDGE_AREAS = tuple(KnowledgeArea(i, n) for i, n in enumerate(KA_NAMES))


def _validated_labels(labels: Iterable[int]) -> frozenset[int]:
    out = frozenset(int(x) for x in labels)
    if not out:
        raise ValueError("label set must be non-empty")
    bad = [x for x in out if not 0 <= x < KA_COUNT]
    if bad:
        raise ValueError(f"label indices out of range 0..8: {sorted(bad)}")
    return out


@dataclass(frozen=True)
class KaLabelSet:
    """A non-empty set of Knowledge Area indices assigned to one text unit."""

    labels: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "labels", _validated_labels(self.labels))

    @classmethod
    def of(cls, *labels: int) -> "KaLabelSet":
        return cls(frozenset(labels))

    def __iter__(self):
        return iter(sorted(self.labels))

    def __contains__(self, index: int) -> bool:
        return index in self.labels

    def __len__(self) -> int:
        return len(self.labels)

    def intersects(self, other: "KaLabelSet") -> bool:
        return bool(self.labels & other.labels)

    def sorted(self) -> list[int]:
        return sorted(self.labels)


@dataclass(frozen=True)
class KaDistribution:
    """Normalized weights over the nine Knowledge Areas (sum to 1)."""

    weights: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        if len(w) != KA_COUNT:
            raise ValueError(f"expected {KA_COUNT} weights, got {len(w)}")
        if any(x < 0 for x in w):
            raise ValueError("weights must be non-negative")
        total = math.fsum(w)
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise ValueError(f"weights sum to {total!r}, not 1")
        object.__setattr__(self, "weights", w)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    def percentages(self) -> tuple[float, ...]:
        """Rendering helper: weights scaled to 0..100."""
        return tuple(100.0 * w for w in self.weights)

    def close_to(self, other: "KaDistribution", tol: float = SUM_TOLERANCE) -> bool:
        return all(abs(a - b) <= tol for a, b in zip(self.weights, other.weights))

    @classmethod
    def uniform(cls) -> "KaDistribution":
        return cls(tuple(1.0 / KA_COUNT for _ in range(KA_COUNT)))

    @classmethod
    def point_mass(cls, index: int) -> "KaDistribution":
        return cls(tuple(1.0 if i == index else 0.0 for i in range(KA_COUNT)))


@dataclass(frozen=True)
class GapReport:
    """Signed per-area difference between a target and a current distribution."""

    deltas: tuple[float, ...]
    l1: float
    kl: float


def normalize_counts(counts) -> KaDistribution:
    """Scale a non-negative 9-vector of counts to a distribution.

    Raises AllZeroError when every component is zero, which signals that no
    labels were aggregated upstream.
    """
    arr = np.asarray(counts, dtype=float)
    if arr.shape != (KA_COUNT,):
        raise ValueError(f"expected a 9-vector, got shape {arr.shape}")
    if np.any(arr < 0):
        raise ValueError("counts must be non-negative")
    total = arr.sum()
    if total == 0:
        raise AllZeroError("all nine counts are zero")
    return KaDistribution(tuple(arr / total))


def labelset_to_indicator(labels: KaLabelSet) -> np.ndarray:
    """0/1 membership vector.  A k-label set contributes k units of mass."""
    out = np.zeros(KA_COUNT)
    for i in labels:
        out[i] = 1.0
    return out


def l1_distance(a: KaDistribution, b: KaDistribution) -> float:
    """Total absolute deviation between two distributions; lies in [0, 2]."""
    return float(np.abs(a.as_array() - b.as_array()).sum())


def kl_divergence(p: KaDistribution, q: KaDistribution, epsilon: float = DEFAULT_KL_EPSILON) -> float:
    """Kullback-Leibler divergence of p from q after additive smoothing.

    Both arguments get epsilon added to every component and are renormalized
    before evaluation, so zero components never produce infinities.
    """
    if epsilon <= 0:
        raise NonPositiveEpsilonError(f"epsilon must be > 0, got {epsilon}")
    ps = (p.as_array() + epsilon) / (1.0 + KA_COUNT * epsilon)
    qs = (q.as_array() + epsilon) / (1.0 + KA_COUNT * epsilon)
    return float(np.sum(ps * np.log(ps / qs)))


def gap_report(current: KaDistribution, target: KaDistribution) -> GapReport:
    """Per-area gaps (target minus current) plus L1 and KL summaries."""
    deltas = tuple(t - c for c, t in zip(current.weights, target.weights))
    return GapReport(
        deltas=deltas,
        l1=l1_distance(current, target),
        kl=kl_divergence(target, current),
    )
