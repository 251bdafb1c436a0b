"""currialign: align curricula with cybersecurity workforce needs.

Maps course content and workforce knowledge requirements onto the nine
Knowledge Areas, computes distributions at course / curriculum / role /
category / market granularity, and selects electives that minimize the
credit-weighted gap to a target profile.
"""

from .domain import (
    KA_COUNT,
    KA_NAMES,
    KNOWLEDGE_AREAS,
    GapReport,
    KaDistribution,
    KaLabelSet,
    KnowledgeArea,
    gap_report,
    kl_divergence,
    l1_distance,
    labelset_to_indicator,
    normalize_counts,
)

__version__ = "0.1.0"

__all__ = [
    "KA_COUNT",
    "KA_NAMES",
    "KNOWLEDGE_AREAS",
    "GapReport",
    "KaDistribution",
    "KaLabelSet",
    "KnowledgeArea",
    "gap_report",
    "kl_divergence",
    "l1_distance",
    "labelset_to_indicator",
    "normalize_counts",
    "__version__",
]
