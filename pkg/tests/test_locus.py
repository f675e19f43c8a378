"""
Tests for the locus census.

This module contains tests for the epsilon degrees, the disjoint counts and
the component census.
"""

import pytest

from src.errors import InvalidArgumentError
from src.locus import (
    CensusReport,
    census_grid,
    component_census,
    component_pairs,
    deg_epsilon,
    disjoint_count,
    disjoint_group_inventory,
    generic_census_formula,
    groups_per_translation_subgroup,
)
from src.modarith import sigma
from src.stable_count import JClass

# Census columns keyed by (N, j): counts for dimensions 0..N-1 and the total
LOW_DIMENSION_TABLE = {
    (2, JClass.GENERIC): ([0, 1], 1),
    (2, JClass.J0): ([3, 1], 4),
    (2, JClass.J1728): ([0, 1], 1),
    (3, JClass.GENERIC): ([6, 0, 1], 7),
    (3, JClass.J0): ([6, 1, 1], 8),
    (3, JClass.J1728): ([14, 0, 1], 15),
    (4, JClass.GENERIC): ([0, 3, 0, 1], 4),
    (4, JClass.J0): ([0, 3, 1, 1], 5),
    (4, JClass.J1728): ([0, 4, 0, 1], 5),
    (5, JClass.GENERIC): ([12, 0, 3, 0, 1], 16),
    (5, JClass.J0): ([48, 0, 3, 1, 1], 53),
    (5, JClass.J1728): ([12, 0, 4, 0, 1], 17),
}


class TestEpsilon:
    """Tests for the degree of epsilon."""

    @pytest.mark.parametrize("ell,coefficient", [(2, 1), (3, 3), (4, 8), (6, 36)])
    def test_degree(self, ell, coefficient):
        """deg epsilon = c m^2."""
        for m in range(1, 30):
            assert deg_epsilon(ell, m) == coefficient * m * m

    def test_groups_per_translation_subgroup(self):
        """deg epsilon / m equals n/2, n, 2n, 6n with n = ell m."""
        for n in range(3, 201):
            for ell, expected in ((2, n // 2), (3, n), (4, 2 * n), (6, 6 * n)):
                if n % ell == 0:
                    assert groups_per_translation_subgroup(ell, n // ell) == expected

    def test_rejects_bad_input(self):
        """ell must be supported and m positive."""
        with pytest.raises(InvalidArgumentError):
            deg_epsilon(5, 1)
        with pytest.raises(InvalidArgumentError):
            deg_epsilon(2, 0)


class TestDisjointCount:
    """Tests for disjoint_count and its inventory."""

    def test_examples(self):
        """Counts of disjoint Galois subspaces."""
        assert disjoint_count(JClass.GENERIC, 4) == 6
        assert disjoint_count(JClass.J0, 6) == 48
        assert disjoint_count(JClass.J1728, 5) == 0
        assert disjoint_count(JClass.J1728, 4) == 14
        assert disjoint_count(JClass.GENERIC, 3) == 0
        assert disjoint_count(JClass.J0, 3) == 3

    def test_rejects_small_degree(self):
        """n must be at least 3."""
        with pytest.raises(InvalidArgumentError):
            disjoint_count(JClass.GENERIC, 2)

    def test_inventory(self):
        """The inventory lists every admissible ell dividing n, zeros included."""
        entries = disjoint_group_inventory(JClass.J0, 6)
        assert [(e.ell, e.h_order, e.psi_count, e.groups_per_h) for e in entries] == [
            (2, 3, 4, 3),
            (3, 2, 0, 6),
            (6, 1, 1, 36),
        ]
        assert sum(e.total for e in entries) == 48

    def test_inventory_matches_count(self):
        """Inventory totals add up to the disjoint count."""
        for n in range(3, 100):
            for j in JClass:
                entries = disjoint_group_inventory(j, n)
                assert sum(e.total for e in entries) == disjoint_count(j, n)


class TestComponentCensus:
    """Tests for component_census."""

    @pytest.mark.parametrize("key", sorted(LOW_DIMENSION_TABLE, key=str))
    def test_low_dimension_table(self, key):
        """Every cell of the low-dimension table."""
        N, j = key
        counts, total = LOW_DIMENSION_TABLE[key]
        report = component_census(j, N + 1)
        assert report.counts_by_dimension() == list(enumerate(counts))
        assert report.total_components == total

    def test_records(self):
        """Records are sorted by descending dimension with bundle data."""
        report = component_census(JClass.GENERIC, 6)
        assert [(r.dimension, r.count, r.group_order) for r in report.records] == [
            (4, 1, 2),
            (2, 3, 4),
            (0, 12, 6),
        ]
        top = report.records[0]
        assert top.fiber_dim == 3
        assert top.base == "E/H"
        assert top.describe_bundle() == "P^3-bundle over E/H"
        points = report.records[-1]
        assert points.fiber_dim is None
        assert points.base is None
        assert points.describe_bundle() == "points"

    def test_single_row(self):
        """n = 3 on a generic curve has one component of dimension one."""
        report = component_census(JClass.GENERIC, 3)
        assert [(r.dimension, r.count, r.group_order) for r in report.records] == [
            (1, 1, 2)
        ]

    def test_constituents(self):
        """Constituents split a row by automorphism order."""
        report = component_census(JClass.J1728, 5)
        row = next(r for r in report.records if r.dimension == 1)
        assert [(c.ell, c.h_order, c.psi_count) for c in row.constituents] == [
            (2, 2, 3),
            (4, 1, 1),
        ]
        assert not row.constituents[0].base_isomorphic_to_curve
        assert row.constituents[1].base_isomorphic_to_curve

    def test_positive_counts_are_psi_sums(self):
        """Each positive-dimensional count is the sum of its psi values."""
        for n in range(3, 60):
            for j in JClass:
                for record in component_census(j, n).records:
                    if record.dimension > 0:
                        assert record.count == sum(
                            c.psi_count for c in record.constituents
                        )

    def test_point_counts_weight_psi_by_groups(self):
        """The point row weights each psi value by its groups per H."""
        points = component_census(JClass.J0, 6).records[-1]
        assert points.dimension == 0
        assert sum(c.psi_count for c in points.constituents) == 5
        assert points.count == 48
        for n in range(3, 60):
            for j in JClass:
                report = component_census(j, n)
                if report.count_for_dimension(0) == 0:
                    continue
                points = report.records[-1]
                assert points.count == sum(
                    c.psi_count * groups_per_translation_subgroup(c.ell, c.h_order)
                    for c in points.constituents
                )

    def test_dict_round_trip(self):
        """to_dict and from_dict are inverse."""
        report = component_census(JClass.J0, 6)
        assert CensusReport.from_dict(report.to_dict()) == report
        assert report.to_dict()["N"] == 5

    def test_rejects_small_degree(self):
        """n must be at least 3."""
        with pytest.raises(InvalidArgumentError):
            component_census(JClass.J0, 2)


class TestGenericFormula:
    """Tests for the generic-curve formula."""

    def test_matches_census(self):
        """The sigma-only formula agrees with the census for N <= 99."""
        for N in range(2, 100):
            report = component_census(JClass.GENERIC, N + 1)
            assert dict(report.counts_by_dimension()) == generic_census_formula(N)

    def test_odd_dimension_points(self):
        """Odd N has ((N+1)/2) sigma((N+1)/2) disjoint subspaces."""
        assert generic_census_formula(5)[0] == 3 * sigma(3)
        assert generic_census_formula(4)[0] == 0

    def test_rejects_small_dimension(self):
        """N must be at least 2."""
        with pytest.raises(InvalidArgumentError):
            generic_census_formula(1)


class TestGridAndPairs:
    """Tests for census_grid and component_pairs."""

    def test_grid(self):
        """The grid holds one report per j-class."""
        grid = census_grid(5)
        assert set(grid) == set(JClass)
        assert [grid[j].total_components for j in JClass] == [16, 53, 17]

    def test_pairs_match_census(self):
        """One (H, <xi>) pair per positive-dimensional component."""
        for n in range(3, 16):
            for j in JClass:
                report = component_census(j, n)
                pairs = component_pairs(j, n)
                for dimension in range(1, n - 1):
                    assert sum(
                        1 for p in pairs if p.dimension == dimension
                    ) == report.count_for_dimension(dimension)

    def test_pair_fields(self):
        """Pairs carry their group order and fiber dimension."""
        pairs = component_pairs(JClass.J0, 4)
        assert [(p.dimension, p.ell, p.group_order, p.fiber_dim) for p in pairs] == [
            (2, 2, 2, 1),
            (1, 3, 3, 0),
        ]
        assert pairs[1].base_isomorphic_to_curve
