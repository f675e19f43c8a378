"""
Locus census module for GaloisCensus.

This module counts the disjoint Galois subspaces of an elliptic curve embedded
in P^(n-1) by a complete linear system of degree n, and lists every component
of the locus of Galois subspaces with its dimension, multiplicity and bundle
descriptor.

A Galois group of order s = ell * |H| contributes
  - points (dimension 0) when s = n, one per coset class of q, and
  - a P^(n-s-1)-bundle over E/H (dimension n - s) when s < n.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from sympy import Matrix, eye

from src.config import AUT_MATRICES, DEFAULT_CONSTRUCTIVE_BOUND, SUPPORTED_ELLS
from src.errors import GaloisCensusError, InvalidArgumentError
from src.modarith import sigma
from src.stable_count import JClass, enumerate_stable_subgroups, psi
from src.torsion import TorsionSubgroup

# Set up logging
logger = logging.getLogger("galoiscensus")

BASE_DESCRIPTOR = "E/H"


@dataclass(frozen=True)
class Constituent:
    """Stable subgroups H of order h_order for automorphisms of order ell."""

    ell: int
    h_order: int
    psi_count: int

    @property
    def base_isomorphic_to_curve(self) -> bool:
        # xi descends to E/H, so E/H has the same automorphism class
        return self.ell != 2

    def to_dict(self) -> Dict[str, int]:
        return {"ell": self.ell, "h_order": self.h_order, "psi": self.psi_count}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Constituent":
        return cls(ell=data["ell"], h_order=data["h_order"], psi_count=data["psi"])


@dataclass(frozen=True)
class ComponentRecord:
    """
    One row of the census: all components of a given dimension.

    For positive dimension count is the sum of the constituents' psi_count.
    The point row (dimension 0) counts disjoint Galois subspaces instead, so
    there each constituent's psi_count is weighted by the number of groups
    sharing its translation subgroup.

    Attributes:
        dimension: n - s
        count: Number of components of this dimension
        group_order: Order s of the Galois groups attached to these components
        constituents: Breakdown by automorphism order
        fiber_dim: n - s - 1 for positive dimension, None for points
        base: "E/H" for positive dimension, None for points
    """

    dimension: int
    count: int
    group_order: int
    constituents: Tuple[Constituent, ...]
    fiber_dim: Optional[int] = None
    base: Optional[str] = None

    def describe_bundle(self) -> str:
        if self.dimension == 0:
            return "points"
        return f"P^{self.fiber_dim}-bundle over {self.base}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dimension": self.dimension,
            "count": self.count,
            "group_order": self.group_order,
            "constituents": [c.to_dict() for c in self.constituents],
            "fiber_dim": self.fiber_dim,
            "base": self.base,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ComponentRecord":
        return cls(
            dimension=data["dimension"],
            count=data["count"],
            group_order=data["group_order"],
            constituents=tuple(Constituent.from_dict(c) for c in data["constituents"]),
            fiber_dim=data["fiber_dim"],
            base=data["base"],
        )


@dataclass(frozen=True)
class CensusReport:
    """Full census of the locus of Galois subspaces for (n, j)."""

    n: int
    j: JClass
    records: Tuple[ComponentRecord, ...] = field(default_factory=tuple)
    total_components: int = 0

    @property
    def N(self) -> int:  # noqa: N802 - ambient dimension
        return self.n - 1

    def count_for_dimension(self, dimension: int) -> int:
        for record in self.records:
            if record.dimension == dimension:
                return record.count
        return 0

    def counts_by_dimension(self) -> List[Tuple[int, int]]:
        """(dimension, count) for every dimension 0..n-2, zeros included."""
        return [(d, self.count_for_dimension(d)) for d in range(self.n - 1)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "N": self.N,
            "j": self.j.value,
            "components": [r.to_dict() for r in self.records],
            "total": self.total_components,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CensusReport":
        return cls(
            n=data["n"],
            j=JClass.from_label(data["j"]),
            records=tuple(ComponentRecord.from_dict(r) for r in data["components"]),
            total_components=data["total"],
        )


@dataclass(frozen=True)
class InventoryEntry:
    """Disjoint Galois groups with translation subgroups of order h_order."""

    ell: int
    h_order: int
    psi_count: int
    groups_per_h: int

    @property
    def total(self) -> int:
        return self.psi_count * self.groups_per_h


@dataclass(frozen=True)
class ComponentPair:
    """A pair (H, <xi>) indexing one positive-dimensional component."""

    dimension: int
    ell: int
    subgroup: TorsionSubgroup
    fiber_dim: int

    @property
    def group_order(self) -> int:
        return self.ell * self.subgroup.modulus

    @property
    def base_isomorphic_to_curve(self) -> bool:
        return self.ell != 2


def _require_ell(ell: int) -> None:
    if ell not in SUPPORTED_ELLS:
        raise InvalidArgumentError(
            f"Unsupported automorphism order: {ell}. Supported: {SUPPORTED_ELLS}"
        )


def _require_degree(n: int) -> None:
    if not isinstance(n, int) or n < 3:
        raise InvalidArgumentError(
            f"A very ample divisor needs degree n >= 3, got {n!r}"
        )


def epsilon_matrix(ell: int, m: int) -> Matrix:
    """
    Integer matrix of the endomorphism epsilon_{xi,m} acting on the lattice

    ell=2: m; ell=3: m(2 + xi); ell=4: 2m(1 + xi); ell=6: 6m xi,
    with xi replaced by the fixed automorphism matrix.
    """
    _require_ell(ell)
    xi = Matrix(AUT_MATRICES[ell])
    identity = eye(2)
    if ell == 2:
        return m * identity
    if ell == 3:
        return m * (2 * identity + xi)
    if ell == 4:
        return 2 * m * (identity + xi)
    return 6 * m * xi


def deg_epsilon(ell: int, m: int) -> int:
    """
    Degree of epsilon_{xi,m}

    Args:
        ell: Automorphism order
        m: Positive integer

    Returns:
        int: Determinant of the substituted integer matrix
    """
    if not isinstance(m, int) or m < 1:
        raise InvalidArgumentError(f"m must be a positive integer, got {m!r}")
    return int(epsilon_matrix(ell, m).det())


def groups_per_translation_subgroup(ell: int, m: int) -> int:
    """
    Number of distinct disjoint Galois groups sharing one translation subgroup

    Args:
        ell: Automorphism order
        m: Order of the translation subgroup

    Returns:
        int: deg(epsilon_{xi,m}) / m
    """
    quotient, remainder = divmod(deg_epsilon(ell, m), m)
    if remainder:
        raise GaloisCensusError(f"deg epsilon is not divisible by m = {m}")
    return quotient


def _disjoint_coefficient(ell: int, n: int) -> int:
    # n/2, n, 2n, 6n
    return {2: n // 2, 3: n, 4: 2 * n, 6: 6 * n}[ell]


def disjoint_count(j: JClass, n: int) -> int:
    """
    Number of disjoint Galois subspaces for an embedding of degree n

    Args:
        j: j-invariant class
        n: Degree of the very ample divisor (n >= 3)

    Returns:
        int: (n/2) psi_2(n/2) + n psi_3(n/3) + 2n psi_4(n/4) + 6n psi_6(n/6),
        where terms with a non-integer argument vanish
    """
    _require_degree(n)
    total = 0
    for ell in SUPPORTED_ELLS:
        if n % ell:
            continue
        total += _disjoint_coefficient(ell, n) * psi(ell, j, n // ell)
    return total


def disjoint_group_inventory(j: JClass, n: int) -> List[InventoryEntry]:
    """
    Breakdown of the disjoint Galois subspaces by automorphism order

    Args:
        j: j-invariant class
        n: Divisor degree (n >= 3)

    Returns:
        List[InventoryEntry]: One entry per admissible ell dividing n
    """
    _require_degree(n)
    entries = []
    for ell in j.admissible_ells:
        if n % ell:
            continue
        h_order = n // ell
        entries.append(
            InventoryEntry(
                ell=ell,
                h_order=h_order,
                psi_count=psi(ell, j, h_order),
                groups_per_h=groups_per_translation_subgroup(ell, h_order),
            )
        )
    return entries


def _constituents(j: JClass, s: int) -> Tuple[Constituent, ...]:
    result = []
    for ell in j.admissible_ells:
        if s % ell:
            continue
        count = psi(ell, j, s // ell)
        if count:
            result.append(Constituent(ell=ell, h_order=s // ell, psi_count=count))
    return tuple(result)


def component_census(j: JClass, n: int) -> CensusReport:
    """
    Census of the components of the locus of Galois subspaces

    Args:
        j: j-invariant class
        n: Divisor degree (n >= 3)

    Returns:
        CensusReport: Records sorted by descending dimension, zero rows omitted
    """
    _require_degree(n)
    records = []
    for s in range(2, n):
        constituents = _constituents(j, s)
        count = sum(c.psi_count for c in constituents)
        if count:
            records.append(
                ComponentRecord(
                    dimension=n - s,
                    count=count,
                    group_order=s,
                    constituents=constituents,
                    fiber_dim=n - s - 1,
                    base=BASE_DESCRIPTOR,
                )
            )

    points = disjoint_count(j, n)
    if points:
        records.append(
            ComponentRecord(
                dimension=0,
                count=points,
                group_order=n,
                constituents=_constituents(j, n),
            )
        )

    records.sort(key=lambda r: r.dimension, reverse=True)
    total = sum(r.count for r in records)
    logger.debug(f"Census for n={n}, j={j.value}: {total} components")
    return CensusReport(n=n, j=j, records=tuple(records), total_components=total)


def census_grid(N: int) -> Dict[JClass, CensusReport]:  # noqa: N803
    """Censuses of all three j-classes for an embedding into P^N."""
    return {j: component_census(j, N + 1) for j in JClass}


def generic_census_formula(N: int) -> Dict[int, int]:  # noqa: N803
    """
    Component counts for j != 0, 1728 from the divisor-sum function alone

    Args:
        N: Ambient dimension (N >= 2)

    Returns:
        Dict[int, int]: dimension -> count for every dimension 0..N-1
    """
    if not isinstance(N, int) or N < 2:
        raise InvalidArgumentError(f"N must be at least 2, got {N!r}")
    counts = {0: ((N + 1) // 2) * sigma((N + 1) // 2) if N % 2 else 0}
    for s in range(2, N + 1):
        counts[N + 1 - s] = sigma(s // 2) if s % 2 == 0 else 0
    return counts


def component_pairs(
    j: JClass, n: int, bound: int = DEFAULT_CONSTRUCTIVE_BOUND
) -> List[ComponentPair]:
    """
    The pairs (H, <xi>) behind every positive-dimensional component

    Args:
        j: j-invariant class
        n: Divisor degree (n >= 3)
        bound: Constructive enumeration bound for |H|

    Returns:
        List[ComponentPair]: Sorted by descending dimension, then ell
    """
    _require_degree(n)
    pairs = []
    for s in range(2, n):
        for ell in j.admissible_ells:
            if s % ell:
                continue
            for subgroup in enumerate_stable_subgroups(ell, s // ell, bound):
                pairs.append(
                    ComponentPair(
                        dimension=n - s,
                        ell=ell,
                        subgroup=subgroup,
                        fiber_dim=n - s - 1,
                    )
                )
    return pairs
