"""
Tests for the finite-field witness.

This module contains tests for the curve model, the group law, the
automorphisms and the divisor-sum and group-equality checks.
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.ecmodel import (
    INFINITY,
    CurveModel,
    CurvePoint,
    apply_aut,
    divisor_sum,
    divisor_sum_check,
    epsilon_apply,
    group_equality_check,
    mu,
    point_add,
    point_neg,
    random_witness_configurations,
    scalar_mul,
    search_curve,
    stable_point_subgroups,
    torsion_basis,
    torsion_points,
)
from src.errors import (
    CurveError,
    InadmissibleAutomorphismError,
    InvalidArgumentError,
    TorsionNotRationalError,
)
from src.locus import deg_epsilon
from src.stable_count import JClass, psi

# y^2 = x^3 + 2 over F_7: nine points, all of them 3-torsion
J0_CURVE = CurveModel.build(7, 0, 2)
# y^2 = x^3 + x over F_5: the four points of E[2]
J1728_CURVE = CurveModel.build(5, 1, 0)
GENERIC_CURVE = CurveModel.build(101, 2, 3)
J0_LARGE = CurveModel.build(13, 0, 1)
J1728_LARGE = CurveModel.build(13, 1, 0)

FIXED_LINE = frozenset({INFINITY, CurvePoint(0, 3), CurvePoint(0, 4)})


class TestCurveModel:
    """Tests for CurveModel."""

    def test_build_classifies(self):
        """j-invariant and field decide the class."""
        assert J0_CURVE.j is JClass.J0
        assert J0_CURVE.zeta == 2
        assert J1728_CURVE.j is JClass.J1728
        assert J1728_CURVE.zeta == 2
        assert CurveModel.build(5, 0, 1).j is JClass.GENERIC
        assert CurveModel.build(7, 1, 0).j is JClass.GENERIC
        assert GENERIC_CURVE.j is JClass.GENERIC

    def test_rejects_singular(self):
        """4a^3 + 27b^2 must not vanish."""
        with pytest.raises(CurveError):
            CurveModel.build(7, 0, 0)

    def test_rejects_small_or_composite_p(self):
        """p must be a prime >= 5."""
        with pytest.raises(CurveError):
            CurveModel.build(3, 1, 1)
        with pytest.raises(CurveError):
            CurveModel(p=9, a=1, b=1)

    def test_rejects_bad_zeta(self):
        """zeta must realize the automorphism."""
        with pytest.raises(CurveError):
            CurveModel(p=7, a=0, b=2, j=JClass.J0, zeta=1)
        with pytest.raises(CurveError):
            CurveModel(p=5, a=1, b=0, j=JClass.J1728, zeta=1)
        with pytest.raises(CurveError):
            CurveModel(p=7, a=1, b=1, zeta=2)

    def test_points(self):
        """Exhaustive point lists."""
        assert len(J0_CURVE.points) == 9
        assert J1728_CURVE.points == (
            INFINITY,
            CurvePoint(0, 0),
            CurvePoint(2, 0),
            CurvePoint(3, 0),
        )
        assert all(J0_CURVE.contains(P) for P in J0_CURVE.points)
        assert not J0_CURVE.contains(CurvePoint(1, 1))


class TestGroupLaw:
    """Tests for the group law."""

    def test_identity_and_inverse(self):
        """P + O = P and P + (-P) = O."""
        for P in J0_CURVE.points:
            assert point_add(J0_CURVE, P, INFINITY) == P
            assert point_add(J0_CURVE, P, point_neg(J0_CURVE, P)) == INFINITY

    def test_group_order_kills_points(self):
        """|E(F_p)| P = O."""
        order = len(GENERIC_CURVE.points)
        for P in GENERIC_CURVE.points[:40]:
            assert scalar_mul(GENERIC_CURVE, order, P) == INFINITY

    def test_negative_scalar(self):
        """(-k) P = -(k P)."""
        P = GENERIC_CURVE.points[5]
        assert scalar_mul(GENERIC_CURVE, -7, P) == point_neg(
            GENERIC_CURVE, scalar_mul(GENERIC_CURVE, 7, P)
        )

    def test_rejects_point_off_curve(self):
        """Points must lie on the curve."""
        with pytest.raises(CurveError):
            point_add(J0_CURVE, CurvePoint(1, 1), INFINITY)
        with pytest.raises(CurveError):
            scalar_mul(J0_CURVE, 2, CurvePoint(1, 1))

    @given(st.data())
    @settings(max_examples=200)
    def test_axioms(self, data):
        """Associativity and commutativity on random triples."""
        points = st.sampled_from(GENERIC_CURVE.points)
        P, Q, R = data.draw(points), data.draw(points), data.draw(points)
        assert point_add(GENERIC_CURVE, P, Q) == point_add(GENERIC_CURVE, Q, P)
        assert point_add(
            GENERIC_CURVE, point_add(GENERIC_CURVE, P, Q), R
        ) == point_add(GENERIC_CURVE, P, point_add(GENERIC_CURVE, Q, R))


class TestAutomorphisms:
    """Tests for apply_aut, mu and epsilon_apply."""

    @pytest.mark.parametrize(
        "curve,ell",
        [(J0_LARGE, 2), (J0_LARGE, 3), (J0_LARGE, 6), (J1728_LARGE, 4)],
    )
    def test_order(self, curve, ell):
        """Applying the automorphism ell times is the identity."""
        for P in curve.points:
            image = P
            for _ in range(ell):
                image = apply_aut(curve, ell, image)
            assert image == P
        assert apply_aut(curve, ell, INFINITY) == INFINITY

    @pytest.mark.parametrize(
        "curve,ell",
        [(J0_LARGE, 3), (J0_LARGE, 6), (J1728_LARGE, 4), (GENERIC_CURVE, 2)],
    )
    def test_homomorphism(self, curve, ell):
        """xi(P + Q) = xi P + xi Q."""
        rng = random.Random(7)
        for _ in range(50):
            P, Q = rng.choice(curve.points), rng.choice(curve.points)
            assert apply_aut(curve, ell, point_add(curve, P, Q)) == point_add(
                curve, apply_aut(curve, ell, P), apply_aut(curve, ell, Q)
            )

    def test_cube_root_relation(self):
        """(1 + xi + xi^2) P = O for ell = 3."""
        for P in J0_LARGE.points:
            xi_p = apply_aut(J0_LARGE, 3, P)
            xi2_p = apply_aut(J0_LARGE, 3, xi_p)
            assert point_add(J0_LARGE, point_add(J0_LARGE, P, xi_p), xi2_p) == INFINITY

    def test_inadmissible(self):
        """A generic curve has no automorphism of order 3."""
        with pytest.raises(InadmissibleAutomorphismError):
            apply_aut(GENERIC_CURVE, 3, INFINITY)
        with pytest.raises(InadmissibleAutomorphismError):
            epsilon_apply(J1728_CURVE, 6, 1, INFINITY)

    def test_mu(self):
        """mu with q = O is xi; mu of order 2 is an involution."""
        q = GENERIC_CURVE.points[3]
        for P in GENERIC_CURVE.points[:20]:
            assert mu(GENERIC_CURVE, 2, INFINITY, P) == apply_aut(GENERIC_CURVE, 2, P)
            assert mu(GENERIC_CURVE, 2, q, mu(GENERIC_CURVE, 2, q, P)) == P

    def test_mu_normalizes_translations(self):
        """mu(P + h) = mu(P) + xi h."""
        q = J0_LARGE.points[4]
        h = J0_LARGE.points[7]
        for P in J0_LARGE.points:
            assert mu(J0_LARGE, 3, q, point_add(J0_LARGE, P, h)) == point_add(
                J0_LARGE, mu(J0_LARGE, 3, q, P), apply_aut(J0_LARGE, 3, h)
            )

    def test_epsilon(self):
        """epsilon for ell = 3, m = 1 is 2q + xi q."""
        q = CurvePoint(3, 1)
        expected = point_add(
            J0_CURVE, scalar_mul(J0_CURVE, 2, q), apply_aut(J0_CURVE, 3, q)
        )
        assert epsilon_apply(J0_CURVE, 3, 1, q) == expected
        assert epsilon_apply(J0_CURVE, 2, 5, INFINITY) == INFINITY

    def test_epsilon_kernel_size(self):
        """The kernel has deg epsilon points when the torsion is rational."""
        kernel = [
            P for P in J0_CURVE.points if epsilon_apply(J0_CURVE, 3, 1, P) == INFINITY
        ]
        assert len(kernel) == deg_epsilon(3, 1)
        kernel = [
            P
            for P in J1728_CURVE.points
            if epsilon_apply(J1728_CURVE, 2, 2, P) == INFINITY
        ]
        assert len(kernel) == deg_epsilon(2, 2)


class TestTorsion:
    """Tests for torsion_points, torsion_basis and stable_point_subgroups."""

    def test_trivial_basis(self):
        """m = 1 gives (O, O)."""
        assert torsion_basis(J0_CURVE, 1) == (INFINITY, INFINITY)

    def test_two_torsion_basis(self):
        """Two distinct points of order 2."""
        P1, P2 = torsion_basis(J1728_CURVE, 2)
        assert P1 != P2
        assert INFINITY not in (P1, P2)
        assert point_add(J1728_CURVE, P1, P2) != INFINITY

    def test_missing_torsion(self):
        """y^2 = x^3 + 1 over F_7 has only three 3-torsion points."""
        curve = CurveModel.build(7, 0, 1)
        assert len(torsion_points(curve, 3)) == 3
        with pytest.raises(TorsionNotRationalError):
            torsion_basis(curve, 3)

    def test_stable_subgroups(self):
        """The fixed line is the only subgroup stable under the order-3 map."""
        assert stable_point_subgroups(J0_CURVE, 3, 3) == [FIXED_LINE]
        assert len(stable_point_subgroups(J0_CURVE, 2, 3)) == 4

    @pytest.mark.parametrize(
        "curve,m",
        [(J0_CURVE, 3), (J0_LARGE, 2), (J1728_LARGE, 2), (J1728_CURVE, 2)],
    )
    def test_stable_count_is_psi(self, curve, m):
        """Stable rational subgroups are counted by psi."""
        for ell in curve.j.admissible_ells:
            assert len(stable_point_subgroups(curve, ell, m)) == psi(ell, curve.j, m)


class TestWitnessChecks:
    """Tests for divisor_sum_check and group_equality_check."""

    def test_trivial_subgroup(self):
        """H = {O}, ell = 2: both sides are q."""
        trivial = frozenset({INFINITY})
        for q in GENERIC_CURVE.points[:20]:
            assert divisor_sum(GENERIC_CURVE, 2, trivial, q) == q
            assert divisor_sum_check(GENERIC_CURVE, 2, trivial, q)

    def test_random_configurations(self):
        """Divisor sums match epsilon on random stable H and q."""
        rng = random.Random(11)
        cases = ((J0_CURVE, 3, 3), (J0_CURVE, 6, 3), (J1728_LARGE, 4, 2))
        for curve, ell, m in cases:
            samples = random_witness_configurations(curve, ell, m, 30, rng)
            for h_points, q, q2 in samples:
                assert divisor_sum_check(curve, ell, h_points, q)
                group_equality_check(curve, ell, h_points, q, q2)

    def test_perturbed_epsilon_fails(self):
        """epsilon with |H| + 1 does not match the divisor sum."""
        q = CurvePoint(3, 1)
        trivial = frozenset({INFINITY})
        assert divisor_sum(J0_CURVE, 3, trivial, q) != epsilon_apply(J0_CURVE, 3, 2, q)

    def test_group_equality(self):
        """G_q = G_q2 exactly when q - q2 lies in H."""
        q = CurvePoint(3, 1)
        assert group_equality_check(J0_CURVE, 3, FIXED_LINE, q, q)
        shifted = point_add(J0_CURVE, q, CurvePoint(0, 3))
        assert group_equality_check(J0_CURVE, 3, FIXED_LINE, q, shifted)
        other = point_add(J0_CURVE, q, CurvePoint(3, 1))
        assert not group_equality_check(J0_CURVE, 3, FIXED_LINE, q, other)

    def test_rejects_unstable_subgroup(self):
        """H must be stable under xi."""
        P = CurvePoint(3, 1)
        unstable = frozenset({INFINITY, P, scalar_mul(J0_CURVE, 2, P)})
        with pytest.raises(InvalidArgumentError):
            divisor_sum_check(J0_CURVE, 3, unstable, INFINITY)

    def test_rejects_non_subgroup(self):
        """H must be a subgroup."""
        with pytest.raises(InvalidArgumentError):
            group_equality_check(
                J0_CURVE, 2, frozenset({INFINITY, CurvePoint(3, 1)}), INFINITY, INFINITY
            )


class TestSearch:
    """Tests for search_curve and random_witness_configurations."""

    def test_finds_hand_checked_curves(self):
        """The first curves with the requested torsion."""
        assert search_curve(JClass.J0, 3) == J0_CURVE
        assert search_curve(JClass.J1728, 2) == J1728_CURVE

    def test_generic_with_two_torsion(self):
        """A generic curve with full rational 2-torsion exists."""
        curve = search_curve(JClass.GENERIC, 2, min_prime=13)
        assert curve.j is JClass.GENERIC
        assert curve.p >= 13
        assert len(torsion_points(curve, 2)) == 4

    def test_no_curve(self):
        """Full 3-torsion needs p = 1 mod 3."""
        with pytest.raises(TorsionNotRationalError):
            search_curve(JClass.GENERIC, 3, max_prime=5)

    def test_configurations_are_seeded(self):
        """The same seed gives the same configurations."""
        first = random_witness_configurations(J0_CURVE, 3, 3, 10, random.Random(3))
        second = random_witness_configurations(J0_CURVE, 3, 3, 10, random.Random(3))
        assert first == second
        assert len(first) == 10
