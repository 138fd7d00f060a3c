import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import ari_by_pair_enumeration
from swarmclust.metrics import (
    Contingency,
    Partition,
    adjusted_rand_index,
    assign_nearest,
    quantization_error,
    sse,
)

labelings = st.integers(2, 8).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(0, 3), min_size=n, max_size=n),
        st.lists(st.integers(0, 3), min_size=n, max_size=n),
    )
)


class TestAssignNearest:
    def test_nearest_by_inspection(self):
        part = assign_nearest(np.array([[0, 0], [10, 10]]), np.array([[1, 1], [9, 9]]))
        assert part.assignment.tolist() == [0, 1]

    def test_tie_breaks_to_lowest_index(self):
        part = assign_nearest(np.array([[0.0]]), np.array([[-1.0], [1.0]]))
        assert part.assignment.tolist() == [0]

    def test_single_cluster(self):
        part = assign_nearest(np.random.default_rng(0).normal(size=(7, 3)), np.zeros((1, 3)))
        assert part.assignment.tolist() == [0] * 7
        assert part.k == 1

    def test_covers_every_point_exactly_once(self):
        rng = np.random.default_rng(1)
        part = assign_nearest(rng.normal(size=(20, 2)), rng.normal(size=(4, 2)))
        assert part.n == 20
        assert part.counts().sum() == 20
        assert part.is_valid(no_empty=False)

    def test_empty_cluster_detectable(self):
        # second centroid is too far away to win any point
        part = assign_nearest(np.array([[0.0], [1.0]]), np.array([[0.5], [100.0]]))
        assert part.has_empty
        assert not part.is_valid(no_empty=True)
        assert part.is_valid(no_empty=False)

    def test_rejects_unknown_metric(self):
        with pytest.raises(ValueError):
            assign_nearest(np.zeros((2, 1)), np.zeros((1, 1)), distance="manhattan")


class TestObjectives:
    def test_zero_when_points_on_centroids(self):
        points = np.array([[1.0, 2.0], [3.0, 4.0]])
        part = Partition([0, 1], 2)
        assert quantization_error(points, points, part) == 0.0
        assert sse(points, points, part) == 0.0

    def test_quantization_single_cluster(self):
        points = np.array([[0.0, 0.0], [0.0, 2.0]])
        assert quantization_error(points, np.array([[0.0, 1.0]]), Partition([0, 0], 1)) == 1.0

    def test_quantization_outer_mean(self):
        # cluster 0: two points at distance 1; cluster 1: two points at distance 3
        points = np.array([[0.0, 1.0], [0.0, -1.0], [10.0, 3.0], [10.0, -3.0]])
        centroids = np.array([[0.0, 0.0], [10.0, 0.0]])
        part = Partition([0, 0, 1, 1], 2)
        assert quantization_error(points, centroids, part) == 2.0

    def test_quantization_skips_empty_clusters(self):
        points = np.array([[0.0, 1.0], [0.0, -1.0]])
        centroids = np.array([[0.0, 0.0], [50.0, 50.0]])
        part = Partition([0, 0], 2)
        assert quantization_error(points, centroids, part) == 1.0

    def test_sse_345_triangle(self):
        assert sse(np.array([[0.0, 0.0]]), np.array([[3.0, 4.0]]), Partition([0], 1)) == 25.0

    def test_sse_two_unit_offsets(self):
        points = np.array([[0.0, 0.0], [0.0, 2.0]])
        assert sse(points, np.array([[0.0, 1.0]]), Partition([0, 0], 1)) == 2.0

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 10_000), n=st.integers(1, 12), k=st.integers(1, 4))
    def test_nonnegative_zero_iff_coincident(self, seed, n, k):
        rng = np.random.default_rng(seed)
        points = rng.normal(size=(n, 2))
        centroids = rng.normal(size=(k, 2))
        part = assign_nearest(points, centroids)
        q = quantization_error(points, centroids, part)
        s = sse(points, centroids, part)
        assert q >= 0.0 and s >= 0.0
        coincident = np.array_equal(points, centroids[part.assignment])
        assert (s == 0.0) == coincident
        assert (q == 0.0) == coincident


class TestAdjustedRandIndex:
    def test_identical(self):
        assert adjusted_rand_index([0, 0, 1, 1], [0, 0, 1, 1]) == 1.0

    def test_permutation_invariant(self):
        assert adjusted_rand_index([0, 0, 1, 1], [1, 1, 0, 0]) == 1.0

    def test_hand_value_exact(self):
        assert adjusted_rand_index([0, 0, 1, 1], [0, 1, 0, 1]) == -0.5

    def test_accepts_partitions(self):
        a = Partition([0, 0, 1, 1], 2)
        b = Partition([0, 1, 0, 1], 2)
        assert adjusted_rand_index(a, b) == -0.5

    def test_degenerate_both_single_cluster(self):
        assert adjusted_rand_index([0, 0, 0], [1, 1, 1]) == 1.0

    def test_degenerate_both_singletons(self):
        assert adjusted_rand_index([0, 1, 2], [2, 0, 1]) == 1.0

    def test_single_cluster_vs_singletons(self):
        assert adjusted_rand_index([0, 0, 0], [0, 1, 2]) == 0.0

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            adjusted_rand_index([0, 1], [0, 1, 2])

    def test_too_short(self):
        with pytest.raises(ValueError):
            adjusted_rand_index([0], [0])

    @settings(max_examples=200, deadline=None)
    @given(labelings)
    def test_symmetry(self, ab):
        a, b = ab
        assert adjusted_rand_index(a, b) == adjusted_rand_index(b, a)

    @settings(max_examples=200, deadline=None)
    @given(labelings, st.permutations(range(4)))
    def test_relabeling_invariance_exact(self, ab, perm):
        a, b = ab
        relabeled = [perm[v] for v in b]
        assert adjusted_rand_index(a, b) == adjusted_rand_index(a, relabeled)
        relabeled_a = [perm[v] for v in a]
        assert adjusted_rand_index(a, b) == adjusted_rand_index(relabeled_a, b)

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(0, 3), min_size=2, max_size=10))
    def test_self_is_one(self, a):
        assert adjusted_rand_index(a, a) == 1.0

    @settings(max_examples=300, deadline=None)
    @given(labelings)
    def test_matches_pair_enumeration_oracle(self, ab):
        a, b = ab
        assert abs(adjusted_rand_index(a, b) - ari_by_pair_enumeration(a, b)) <= 1e-12

    @settings(max_examples=100, deadline=None)
    @given(labelings)
    def test_at_most_one(self, ab):
        a, b = ab
        assert adjusted_rand_index(a, b) <= 1.0


class TestContingency:
    def test_sums_consistent(self):
        ct = Contingency.from_labels([0, 0, 1, 2, 2, 2], [1, 1, 0, 0, 2, 2])
        assert ct.table.sum() == ct.n == 6
        assert np.array_equal(ct.table.sum(axis=1), ct.row_sums)
        assert np.array_equal(ct.table.sum(axis=0), ct.col_sums)


class TestPartition:
    def test_rejects_out_of_range_ids(self):
        with pytest.raises(ValueError):
            Partition([0, 2], 2)
        with pytest.raises(ValueError):
            Partition([-1, 0], 2)

    def test_counts(self):
        part = Partition([0, 0, 2], 3)
        assert part.counts().tolist() == [2, 0, 1]
        assert part.has_empty
