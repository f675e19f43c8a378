"""
Elliptic curve witness module for GaloisCensus.

This module realizes the objects behind the census on a concrete curve
y^2 = x^3 + a x + b over a small prime field: the group law, the
origin-fixing automorphisms xi, the translation subgroups H <= E[m], the
groups G_{H,xi,q} generated by H and mu_{xi,q}(x) = xi x + q, and the
endomorphism epsilon_{xi,m}. Everything is exhaustive and meant for
desk-scale primes.
"""

import logging
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy import isprime, nthroot_mod, primerange, sqrt_mod

from src.config import WITNESS_MAX_PRIME
from src.errors import (
    CurveError,
    InadmissibleAutomorphismError,
    InvalidArgumentError,
    TorsionNotRationalError,
    WitnessError,
)
from src.stable_count import JClass
from src.torsion import enumerate_order_m_subgroups

# Set up logging
logger = logging.getLogger("galoiscensus")


@dataclass(frozen=True)
class CurvePoint:
    """A rational point; x = y = None is the point at infinity."""

    x: Optional[int] = None
    y: Optional[int] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def sort_key(self) -> Tuple[int, int, int]:
        # infinity sorts first
        return (0, 0, 0) if self.is_infinity else (1, self.x, self.y)

    def __str__(self) -> str:
        return "O" if self.is_infinity else f"({self.x},{self.y})"


INFINITY = CurvePoint()


@dataclass(frozen=True)
class CurveModel:
    """
    The curve y^2 = x^3 + a x + b over F_p.

    Attributes:
        p: Field characteristic (p >= 5)
        a: Coefficient of x
        b: Constant coefficient
        j: Automorphism class realized over F_p
        zeta: Primitive cube root of unity (J0) or square root of -1 (J1728)
    """

    p: int
    a: int
    b: int
    j: JClass = JClass.GENERIC
    zeta: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 5 or not isprime(self.p):
            raise CurveError(f"p must be a prime >= 5, got {self.p!r}")
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)
        if (4 * self.a**3 + 27 * self.b**2) % self.p == 0:
            raise CurveError(f"Singular curve: a={self.a}, b={self.b} over F_{self.p}")
        if self.j is JClass.J0:
            if self.a != 0 or self.zeta is None:
                raise CurveError("A j=0 model needs a = 0 and a cube root of unity")
            if pow(self.zeta, 3, self.p) != 1 or self.zeta % self.p == 1:
                raise CurveError(f"{self.zeta} is not a primitive cube root of unity")
        elif self.j is JClass.J1728:
            if self.b != 0 or self.zeta is None:
                raise CurveError("A j=1728 model needs b = 0 and a square root of -1")
            if (self.zeta * self.zeta + 1) % self.p:
                raise CurveError(f"{self.zeta} is not a square root of -1")
        elif self.zeta is not None:
            raise CurveError("A generic model carries no zeta")

    @classmethod
    def build(cls, p: int, a: int, b: int) -> "CurveModel":
        """
        Create a curve and classify it by its j-invariant

        Args:
            p: Prime >= 5
            a: Coefficient of x
            b: Constant coefficient

        Returns:
            CurveModel: J0 when j = 0 and p = 1 mod 3, J1728 when j = 1728 and
            p = 1 mod 4 (so that the automorphism is defined over F_p),
            otherwise Generic
        """
        if not isinstance(p, int) or p < 5 or not isprime(p):
            raise CurveError(f"p must be a prime >= 5, got {p!r}")
        a, b = a % p, b % p
        invariant = j_invariant(p, a, b)
        if invariant == 0 and p % 3 == 1:
            zeta = min(r for r in nthroot_mod(1, 3, p, all_roots=True) if r != 1)
            return cls(p=p, a=a, b=b, j=JClass.J0, zeta=zeta)
        if invariant == 1728 % p and b == 0 and p % 4 == 1:
            zeta = min(sqrt_mod(p - 1, p, all_roots=True))
            return cls(p=p, a=a, b=b, j=JClass.J1728, zeta=zeta)
        return cls(p=p, a=a, b=b)

    def contains(self, point: CurvePoint) -> bool:
        if point.is_infinity:
            return True
        x, y = point.x, point.y
        return (y * y - (x**3 + self.a * x + self.b)) % self.p == 0

    @cached_property
    def points(self) -> Tuple[CurvePoint, ...]:
        """All rational points, infinity first, then sorted by (x, y)."""
        roots: Dict[int, List[int]] = {}
        for y in range(self.p):
            roots.setdefault(y * y % self.p, []).append(y)
        found = [INFINITY]
        for x in range(self.p):
            rhs = (x**3 + self.a * x + self.b) % self.p
            for y in roots.get(rhs, []):
                found.append(CurvePoint(x, y))
        return tuple(found)

    def __str__(self) -> str:
        return (
            f"y^2 = x^3 + {self.a}x + {self.b} over F_{self.p} "
            f"(j-class {self.j.value})"
        )


def j_invariant(p: int, a: int, b: int) -> int:
    """j = 1728 * 4a^3 / (4a^3 + 27b^2) in F_p."""
    numerator = 4 * a**3
    denominator = (numerator + 27 * b**2) % p
    if denominator == 0:
        raise CurveError(f"Singular curve: a={a}, b={b} over F_{p}")
    return 1728 * numerator * pow(denominator, -1, p) % p


def _check_point(curve: CurveModel, point: CurvePoint) -> None:
    if not curve.contains(point):
        raise CurveError(f"Point {point} is not on {curve}")


def point_neg(curve: CurveModel, point: CurvePoint) -> CurvePoint:
    if point.is_infinity:
        return point
    return CurvePoint(point.x, (-point.y) % curve.p)


def _add(curve: CurveModel, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    p = curve.p
    if P.x == Q.x:
        if (P.y + Q.y) % p == 0:
            return INFINITY
        slope = (3 * P.x * P.x + curve.a) * pow(2 * P.y, -1, p) % p
    else:
        slope = (Q.y - P.y) * pow(Q.x - P.x, -1, p) % p
    x = (slope * slope - P.x - Q.x) % p
    y = (slope * (P.x - x) - P.y) % p
    return CurvePoint(x, y)


def point_add(curve: CurveModel, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    """
    Group law with the point at infinity as identity

    Raises:
        CurveError: If either point is not on the curve
    """
    _check_point(curve, P)
    _check_point(curve, Q)
    return _add(curve, P, Q)


def point_sub(curve: CurveModel, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    return point_add(curve, P, point_neg(curve, Q))


def scalar_mul(curve: CurveModel, k: int, P: CurvePoint) -> CurvePoint:
    """
    k * P by double-and-add; negative k multiplies -P

    Raises:
        CurveError: If P is not on the curve
    """
    _check_point(curve, P)
    if k < 0:
        k, P = -k, point_neg(curve, P)
    result = INFINITY
    addend = P
    while k:
        if k & 1:
            result = _add(curve, result, addend)
        addend = _add(curve, addend, addend)
        k >>= 1
    return result


def point_sum(curve: CurveModel, points: Iterable[CurvePoint]) -> CurvePoint:
    total = INFINITY
    for point in points:
        total = point_add(curve, total, point)
    return total


def apply_aut(curve: CurveModel, ell: int, P: CurvePoint) -> CurvePoint:
    """
    Apply the origin-fixing automorphism of order ell

    ell=2: (x, -y); ell=3: (zeta x, y); ell=6: (zeta x, -y); ell=4: (-x, zeta y).

    Raises:
        InadmissibleAutomorphismError: If the curve has no automorphism of order ell
    """
    if not curve.j.admits(ell):
        raise InadmissibleAutomorphismError(
            f"A curve of j-class {curve.j.value} has no automorphism of order {ell}"
        )
    _check_point(curve, P)
    if P.is_infinity:
        return P
    p = curve.p
    if ell == 2:
        return CurvePoint(P.x, (-P.y) % p)
    if ell == 3:
        return CurvePoint(curve.zeta * P.x % p, P.y)
    if ell == 6:
        return CurvePoint(curve.zeta * P.x % p, (-P.y) % p)
    return CurvePoint((-P.x) % p, curve.zeta * P.y % p)


def mu(curve: CurveModel, ell: int, q: CurvePoint, P: CurvePoint) -> CurvePoint:
    """mu_{xi,q}(P) = xi P + q."""
    return point_add(curve, apply_aut(curve, ell, P), q)


def epsilon_apply(curve: CurveModel, ell: int, m: int, q: CurvePoint) -> CurvePoint:
    """
    Evaluate epsilon_{xi,m}(q)

    ell=2: m q; ell=3: m(2 + xi) q; ell=4: 2m(1 + xi) q; ell=6: 6m xi q.
    """
    if not curve.j.admits(ell):
        raise InadmissibleAutomorphismError(
            f"A curve of j-class {curve.j.value} has no automorphism of order {ell}"
        )
    if ell == 2:
        return scalar_mul(curve, m, q)
    xi_q = apply_aut(curve, ell, q)
    if ell == 3:
        return scalar_mul(curve, m, point_add(curve, scalar_mul(curve, 2, q), xi_q))
    if ell == 4:
        return scalar_mul(curve, 2 * m, point_add(curve, q, xi_q))
    return scalar_mul(curve, 6 * m, xi_q)


def point_order(curve: CurveModel, P: CurvePoint) -> int:
    """Order of P, found by stepping through its multiples."""
    _check_point(curve, P)
    order = 1
    current = P
    while not current.is_infinity:
        current = _add(curve, current, P)
        order += 1
    return order


def torsion_points(curve: CurveModel, m: int) -> List[CurvePoint]:
    """Rational points P with m P = O."""
    if not isinstance(m, int) or m < 1:
        raise InvalidArgumentError(f"m must be a positive integer, got {m!r}")
    return [P for P in curve.points if scalar_mul(curve, m, P).is_infinity]


def _span(
    curve: CurveModel, P1: CurvePoint, P2: CurvePoint, m: int
) -> Dict[Tuple[int, int], CurvePoint]:
    multiples1 = [INFINITY]
    multiples2 = [INFINITY]
    for _ in range(m - 1):
        multiples1.append(_add(curve, multiples1[-1], P1))
        multiples2.append(_add(curve, multiples2[-1], P2))
    return {
        (a, b): _add(curve, multiples1[a], multiples2[b])
        for a in range(m)
        for b in range(m)
    }


def torsion_basis(curve: CurveModel, m: int) -> Tuple[CurvePoint, CurvePoint]:
    """
    Two points generating the full rational m-torsion

    Args:
        curve: Curve model
        m: Positive integer

    Returns:
        Tuple[CurvePoint, CurvePoint]: (P1, P2) with {a P1 + b P2} of size m^2

    Raises:
        TorsionNotRationalError: If E(F_p) does not contain all m^2 m-torsion points
    """
    if m == 1:
        return INFINITY, INFINITY
    torsion = torsion_points(curve, m)
    if len(torsion) != m * m:
        raise TorsionNotRationalError(
            f"{curve} has {len(torsion)} rational {m}-torsion points, expected {m * m}"
        )
    full_order = [P for P in torsion if point_order(curve, P) == m]
    for P1 in full_order:
        for P2 in full_order:
            if len(set(_span(curve, P1, P2, m).values())) == m * m:
                return P1, P2
    raise WitnessError(f"No basis of E[{m}] found on {curve}")


def is_subgroup(curve: CurveModel, points: FrozenSet[CurvePoint]) -> bool:
    if INFINITY not in points:
        return False
    return all(point_sub(curve, P, Q) in points for P in points for Q in points)


def is_aut_stable(curve: CurveModel, ell: int, points: FrozenSet[CurvePoint]) -> bool:
    return all(apply_aut(curve, ell, P) in points for P in points)


def stable_point_subgroups(
    curve: CurveModel, ell: int, m: int
) -> List[FrozenSet[CurvePoint]]:
    """
    The xi-stable order-m subgroups of the rational m-torsion

    Every order-m subgroup of (Z/mZ)^2 is pushed to the curve through a torsion
    basis and kept when apply_aut maps it onto itself.
    """
    P1, P2 = torsion_basis(curve, m)
    span = _span(curve, P1, P2, m) if m > 1 else {(0, 0): INFINITY}
    stable = []
    for subgroup in enumerate_order_m_subgroups(m):
        points = frozenset(span[v] for v in subgroup.elements)
        if is_aut_stable(curve, ell, points):
            stable.append(points)
    return stable


@dataclass(frozen=True)
class GroupElement:
    """The map mu_{xi,q}^i composed with translation by h."""

    i: int
    h: CurvePoint


def evaluate_element(
    curve: CurveModel, ell: int, q: CurvePoint, element: GroupElement, P: CurvePoint
) -> CurvePoint:
    image = _add(curve, P, element.h)
    for _ in range(element.i):
        image = mu(curve, ell, q, image)
    return image


def _validate_translation_group(
    curve: CurveModel, ell: int, h_points: FrozenSet[CurvePoint]
) -> None:
    if not is_subgroup(curve, h_points):
        raise InvalidArgumentError("H is not a subgroup of E(F_p)")
    if not is_aut_stable(curve, ell, h_points):
        raise InvalidArgumentError(
            f"H is not stable under the order-{ell} automorphism"
        )


def group_elements(
    curve: CurveModel, ell: int, h_points: FrozenSet[CurvePoint]
) -> List[GroupElement]:
    """The ell * |H| tagged elements of G_{H,xi,q}."""
    ordered = sorted(h_points, key=CurvePoint.sort_key)
    return [GroupElement(i, h) for i in range(ell) for h in ordered]


def divisor_sum(
    curve: CurveModel, ell: int, h_points: FrozenSet[CurvePoint], q: CurvePoint
) -> CurvePoint:
    """
    Sum in E of the divisor D_{H,xi,q} = sum over g in G_{H,xi,q} of [g(O)]

    Raises:
        InvalidArgumentError: If H is not a xi-stable subgroup
        WitnessError: If the divisor does not have ell * |H| points
    """
    _validate_translation_group(curve, ell, h_points)
    orbit = [
        evaluate_element(curve, ell, q, g, INFINITY)
        for g in group_elements(curve, ell, h_points)
    ]
    if len(orbit) != ell * len(h_points):
        raise WitnessError(
            f"Divisor has {len(orbit)} points, expected {ell * len(h_points)}"
        )
    return point_sum(curve, orbit)


def divisor_sum_check(
    curve: CurveModel, ell: int, h_points: FrozenSet[CurvePoint], q: CurvePoint
) -> bool:
    """
    Check S(D_{H,xi,q}) = epsilon_{xi,|H|}(q) on the curve

    Returns:
        bool: True if both sides agree
    """
    return divisor_sum(curve, ell, h_points, q) == epsilon_apply(
        curve, ell, len(h_points), q
    )


def group_signature(
    curve: CurveModel,
    ell: int,
    h_points: FrozenSet[CurvePoint],
    q: CurvePoint,
    probes: Sequence[CurvePoint],
) -> FrozenSet[Tuple[CurvePoint, ...]]:
    """G_{H,xi,q} as a set of maps, each given by its values on the probe points."""
    return frozenset(
        tuple(evaluate_element(curve, ell, q, g, P) for P in probes)
        for g in group_elements(curve, ell, h_points)
    )


def group_equality_check(
    curve: CurveModel,
    ell: int,
    h_points: FrozenSet[CurvePoint],
    q: CurvePoint,
    q2: CurvePoint,
) -> bool:
    """
    Compare G_{H,xi,q} with G_{H,xi,q2} as sets of maps

    The result is cross-checked against the criterion q - q2 in H.

    Returns:
        bool: True if the two groups coincide

    Raises:
        WitnessError: If set equality and the coset criterion disagree
    """
    _validate_translation_group(curve, ell, h_points)
    _check_point(curve, q)
    _check_point(curve, q2)
    probes = curve.points
    equal = group_signature(curve, ell, h_points, q, probes) == group_signature(
        curve, ell, h_points, q2, probes
    )
    in_h = point_sub(curve, q, q2) in h_points
    if equal != in_h:
        raise WitnessError(
            f"Groups equal: {equal}, but q - q2 in H: {in_h} (q={q}, q2={q2})"
        )
    return equal


def search_curve(
    j: JClass, m: int, min_prime: int = 5, max_prime: int = WITNESS_MAX_PRIME
) -> CurveModel:
    """
    First curve of the given class with full rational m-torsion

    Primes are tried in ascending order, then the free coefficient from 1 up:
    y^2 = x^3 + b (J0, p = 1 mod 3), y^2 = x^3 + a x (J1728, p = 1 mod 4),
    y^2 = x^3 + a x + b with a, b != 0 and generic j otherwise.

    Raises:
        TorsionNotRationalError: If no such curve exists below max_prime
    """
    for p in primerange(max(min_prime, 5), max_prime + 1):
        for candidate in _candidates(j, p):
            if len(torsion_points(candidate, m)) == m * m:
                logger.debug(f"Found witness curve {candidate} with full {m}-torsion")
                return candidate
    raise TorsionNotRationalError(
        f"No j-class {j.value} curve with full rational {m}-torsion below {max_prime}"
    )


def _candidates(j: JClass, p: int) -> Iterable[CurveModel]:
    if j is JClass.J0:
        if p % 3 == 1:
            for b in range(1, p):
                yield CurveModel.build(p, 0, b)
    elif j is JClass.J1728:
        if p % 4 == 1:
            for a in range(1, p):
                yield CurveModel.build(p, a, 0)
    else:
        for a in range(1, p):
            for b in range(1, p):
                if (4 * a**3 + 27 * b**2) % p == 0:
                    continue
                curve = CurveModel.build(p, a, b)
                if curve.j is JClass.GENERIC and curve.a and curve.b:
                    yield curve


def random_witness_configurations(
    curve: CurveModel, ell: int, m: int, count: int, rng: random.Random
) -> List[Tuple[FrozenSet[CurvePoint], CurvePoint, CurvePoint]]:
    """
    Random (H, q, q2) triples for the divisor-sum and group-equality checks

    H is drawn from the xi-stable subgroups of E[m] together with {O}; q is a
    random point; q2 is q + h for h in H or q + t for a random point t, each half
    of the time.
    """
    subgroups = stable_point_subgroups(curve, ell, m) + [frozenset([INFINITY])]
    points = curve.points
    configurations = []
    for _ in range(count):
        h_points = rng.choice(subgroups)
        q = rng.choice(points)
        if rng.random() < 0.5:
            shift = rng.choice(sorted(h_points, key=CurvePoint.sort_key))
        else:
            shift = rng.choice(points)
        configurations.append((h_points, q, point_add(curve, q, shift)))
    return configurations
