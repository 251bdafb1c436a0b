"""Aggregation of label sets into Knowledge Area distributions.

Courses aggregate their topics' labels, curricula blend course distributions
credit-weighted, roles aggregate their knowledge descriptions, categories
average their roles, and the market averages roles weighted by job demand.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import ClassifiedTopic
from .domain import KA_COUNT, KaDistribution, KaLabelSet, labelset_to_indicator, normalize_counts
from .errors import (
    EmptyDemandError,
    EmptyInputError,
    MissingRoleDistributionError,
    UnknownElectiveIdError,
    UnlabeledKdError,
)
from .ingest import CourseDoc, CurriculumProfile, KnowledgeDescription


@dataclass(frozen=True)
class MarketProfile:
    """Demand-weighted view of the job market: per-role weights plus aggregate."""

    per_role: dict[str, tuple[KaDistribution, float]]
    aggregate: KaDistribution


def aggregate_labelsets(sets: list[KaLabelSet]) -> KaDistribution:
    """Sum the indicator vectors of all label sets and normalize.

    A set with k labels contributes one full unit to each of its k areas; no
    per-item renormalization happens before the sum.
    """
    if not sets:
        raise EmptyInputError("no label sets to aggregate")
    counts = np.zeros(KA_COUNT)
    for labels in sets:
        counts += labelset_to_indicator(labels)
    return normalize_counts(counts)


def course_distribution(course: CourseDoc, topics: list[ClassifiedTopic]) -> KaDistribution:
    """Aggregate the classified topics extracted from one course."""
    if not topics:
        raise EmptyInputError(f"course {course.id!r} has no classified topics")
    return aggregate_labelsets([t.labels for t in topics])


def curriculum_distribution(profile: CurriculumProfile, selection: set[str]) -> KaDistribution:
    """Credit-weighted blend of the mandatory block and the selected electives."""
    known = {e.id for e in profile.electives}
    unknown = sorted(set(selection) - known)
    if unknown:
        raise UnknownElectiveIdError(unknown[0])
    numerator = np.zeros(KA_COUNT)
    total_credits = 0.0
    if profile.mandatory is not None:
        numerator += profile.mandatory_credits * profile.mandatory.as_array()
        total_credits += profile.mandatory_credits
    for elective in profile.electives:
        if elective.id in selection:
            numerator += elective.credits * elective.distribution.as_array()
            total_credits += elective.credits
    return normalize_counts(numerator)


def role_distribution(kds: list[KnowledgeDescription]) -> KaDistribution:
    """Aggregate the label sets of all knowledge descriptions of one role."""
    if not kds:
        raise EmptyInputError("role has no knowledge descriptions")
    for kd in kds:
        if kd.labels is None:
            raise UnlabeledKdError(kd.id)
    return aggregate_labelsets([kd.labels for kd in kds])


def category_distribution(roles: list[KaDistribution]) -> KaDistribution:
    """Unweighted componentwise mean of the member roles' distributions."""
    if not roles:
        raise EmptyInputError("category has no roles")
    mean = np.mean([r.as_array() for r in roles], axis=0)
    return KaDistribution(tuple(mean))


def market_distribution(
    roles: dict[str, KaDistribution], demand: dict[str, int]
) -> MarketProfile:
    """Demand-weighted mean over roles.  Roles without demand are excluded."""
    if not demand:
        raise EmptyDemandError("no demand data")
    for role in demand:
        if role not in roles:
            raise MissingRoleDistributionError(role)
    total = sum(demand.values())
    if total == 0:
        raise EmptyDemandError("every demand count is zero")
    per_role: dict[str, tuple[KaDistribution, float]] = {}
    aggregate = np.zeros(KA_COUNT)
    for role, count in demand.items():
        weight = count / total
        per_role[role] = (roles[role], weight)
        aggregate += weight * roles[role].as_array()
    return MarketProfile(per_role=per_role, aggregate=KaDistribution(tuple(aggregate)))
