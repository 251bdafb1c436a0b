import math

import numpy as np
import pytest

from currialign.domain import (
    DEFAULT_KL_EPSILON,
    KA_COUNT,
    KA_NAMES,
    KNOWLEDGE_AREAS,
    KaDistribution,
    KaLabelSet,
    gap_report,
    kl_divergence,
    l1_distance,
    labelset_to_indicator,
    normalize_counts,
)
from currialign.errors import AllZeroError, NonPositiveEpsilonError
from reference_values import KTH_MANDATORY_PCT, VULNERABILITY_ANALYSIS_ROW


def random_distribution(rng) -> KaDistribution:
    return normalize_counts(rng.random(KA_COUNT) + 1e-12)


class TestTaxonomy:
    def test_exactly_nine_areas(self):
        assert len(KNOWLEDGE_AREAS) == 9
        assert len(KA_NAMES) == 9

    def test_index_name_bijection(self):
        assert [a.index for a in KNOWLEDGE_AREAS] == list(range(9))
        assert len({a.name for a in KNOWLEDGE_AREAS}) == 9
        assert KA_NAMES[0] == "Miscellaneous"
        assert KA_NAMES[4] == "Connection"
        assert KA_NAMES[8] == "Societal"

    def test_mismatched_name_rejected(self):
        from currialign.domain import KnowledgeArea

        with pytest.raises(ValueError):
            KnowledgeArea(0, "Data")


class TestKaLabelSet:
    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            KaLabelSet(frozenset())

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            KaLabelSet(frozenset({9}))

    def test_iteration_sorted(self):
        assert list(KaLabelSet.of(8, 1, 4)) == [1, 4, 8]


class TestKaDistribution:
    def test_must_sum_to_one(self):
        with pytest.raises(ValueError):
            KaDistribution((0.5,) + (0.0,) * 8)

    def test_negative_rejected(self):
        weights = [1.2, -0.2] + [0.0] * 7
        with pytest.raises(ValueError):
            KaDistribution(tuple(weights))

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError):
            KaDistribution((1.0,))


class TestNormalizeCounts:
    def test_single_class(self):
        dist = normalize_counts([0, 0, 0, 0, 0, 0, 0, 3, 0])
        assert dist.weights[7] == 1.0
        assert sum(dist.weights) == 1.0

    def test_indicator_sum_case(self):
        dist = normalize_counts([1, 0, 0, 0, 0, 1, 1, 0, 1])
        for i in (0, 5, 6, 8):
            assert dist.weights[i] == pytest.approx(0.25, abs=1e-12)
        for i in (1, 2, 3, 4, 7):
            assert dist.weights[i] == 0.0

    def test_uniform_by_symmetry(self):
        dist = normalize_counts([2] * 9)
        assert all(w == pytest.approx(1 / 9, abs=1e-12) for w in dist.weights)

    def test_all_zero(self):
        with pytest.raises(AllZeroError):
            normalize_counts([0.0] * 9)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            normalize_counts([1] * 8 + [-1])

    def test_idempotent_under_scaling(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            counts = rng.random(9) * 10 + 1e-9
            scale = rng.random() * 100 + 1e-6
            once = normalize_counts(counts)
            twice = normalize_counts(once.as_array() * scale)
            assert once.close_to(twice, tol=1e-12)


class TestIndicator:
    def test_singleton(self):
        assert labelset_to_indicator(KaLabelSet.of(5)).tolist() == [0, 0, 0, 0, 0, 1, 0, 0, 0]

    def test_two_labels_contribute_full_units(self):
        vec = labelset_to_indicator(KaLabelSet.of(6, 8))
        assert vec.tolist() == [0, 0, 0, 0, 0, 0, 1, 0, 1]
        assert vec.sum() == 2.0

    def test_full_set(self):
        assert labelset_to_indicator(KaLabelSet.of(*range(9))).tolist() == [1.0] * 9

    def test_indicator_then_normalize_is_uniform_over_labels(self):
        labels = KaLabelSet.of(2, 5, 7)
        dist = normalize_counts(labelset_to_indicator(labels))
        for i in range(9):
            expected = 1 / 3 if i in labels else 0.0
            assert dist.weights[i] == pytest.approx(expected, abs=1e-12)


class TestL1Distance:
    def test_identity(self):
        d = KaDistribution.uniform()
        assert l1_distance(d, d) == 0.0

    def test_disjoint_support_is_two(self):
        assert l1_distance(KaDistribution.point_mass(0), KaDistribution.point_mass(8)) == 2.0

    def test_hand_summed_overlap(self):
        a = normalize_counts([0.5, 0.5, 0, 0, 0, 0, 0, 0, 0])
        b = normalize_counts([0, 0.5, 0.5, 0, 0, 0, 0, 0, 0])
        # |0.5-0| + |0.5-0.5| + |0-0.5| = 1.0
        assert l1_distance(a, b) == pytest.approx(1.0, abs=1e-12)

    def test_triangle_inequality(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            a, b, c = (random_distribution(rng) for _ in range(3))
            assert l1_distance(a, c) <= l1_distance(a, b) + l1_distance(b, c) + 1e-12

    def test_symmetry_and_range(self):
        rng = np.random.default_rng(13)
        for _ in range(200):
            a, b = random_distribution(rng), random_distribution(rng)
            assert l1_distance(a, b) == pytest.approx(l1_distance(b, a), abs=0)
            assert 0.0 <= l1_distance(a, b) <= 2.0


def kl_oracle(p, q, epsilon):
    """Straight-line evaluation of the smoothed divergence, scalar math only."""
    ps = [(x + epsilon) / (1 + 9 * epsilon) for x in p]
    qs = [(x + epsilon) / (1 + 9 * epsilon) for x in q]
    return sum(pi * math.log(pi / qi) for pi, qi in zip(ps, qs))


class TestKlDivergence:
    def test_identity_zero(self):
        d = normalize_counts([1, 2, 3, 4, 5, 6, 7, 8, 9])
        assert kl_divergence(d, d) == pytest.approx(0.0, abs=1e-12)

    def test_uniform_pair_zero(self):
        u = KaDistribution.uniform()
        assert kl_divergence(u, u) == pytest.approx(0.0, abs=1e-12)

    def test_point_mass_vs_uniform_matches_oracle(self):
        p = KaDistribution.point_mass(7)
        q = KaDistribution.uniform()
        expected = kl_oracle(p.weights, q.weights, 1e-9)
        assert kl_divergence(p, q, epsilon=1e-9) == pytest.approx(expected, abs=1e-9)

    def test_epsilon_must_be_positive(self):
        u = KaDistribution.uniform()
        with pytest.raises(NonPositiveEpsilonError):
            kl_divergence(u, u, epsilon=0.0)
        with pytest.raises(NonPositiveEpsilonError):
            kl_divergence(u, u, epsilon=-1e-9)

    def test_non_negative(self):
        rng = np.random.default_rng(17)
        for _ in range(1000):
            p, q = random_distribution(rng), random_distribution(rng)
            assert kl_divergence(p, q) >= -1e-15


class TestGapReport:
    def test_identity(self):
        d = KaDistribution.uniform()
        report = gap_report(d, d)
        assert report.deltas == (0.0,) * 9
        assert report.l1 == 0.0

    def test_point_mass_swap(self):
        report = gap_report(KaDistribution.point_mass(0), KaDistribution.point_mass(7))
        assert report.deltas[0] == -1.0
        assert report.deltas[7] == 1.0
        assert report.l1 == 2.0

    def test_deltas_sum_to_zero(self):
        rng = np.random.default_rng(23)
        for _ in range(300):
            report = gap_report(random_distribution(rng), random_distribution(rng))
            assert math.fsum(report.deltas) == pytest.approx(0.0, abs=1e-9)
            assert report.l1 == pytest.approx(sum(abs(d) for d in report.deltas), abs=1e-9)

    def test_case_study_gap_includes_connection(self):
        # the mandatory block of the case-study program vs its target role:
        # Connection Security must rank among the two largest positive gaps
        current = normalize_counts(KTH_MANDATORY_PCT)
        target = normalize_counts(VULNERABILITY_ANALYSIS_ROW)
        report = gap_report(current, target)
        top_two = sorted(range(9), key=lambda i: -report.deltas[i])[:2]
        assert 4 in top_two

    def test_kl_field_uses_default_epsilon(self):
        current = normalize_counts([1, 1, 1, 1, 1, 1, 1, 1, 2])
        target = KaDistribution.uniform()
        report = gap_report(current, target)
        assert report.kl == pytest.approx(
            kl_oracle(target.weights, current.weights, DEFAULT_KL_EPSILON), abs=1e-12
        )
