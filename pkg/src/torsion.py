"""
Torsion module for GaloisCensus.

This module models the m-torsion group E[m] = (Z/mZ)^2, the integer matrices
through which the automorphisms of order 2, 3, 4 and 6 act on it, and
order-m subgroups in the canonical form

    S_{x,i} = <(p^i, x), (0, p^(a-i))>   inside (Z/p^a Z)^2

combined across the primes of m by the Chinese Remainder Theorem. It also
supplies the closure-based enumerator used as an independent oracle.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.config import AUT_MATRICES, DEFAULT_ORACLE_BOUND, SUPPORTED_ELLS
from src.errors import (
    BoundExceededError,
    CanonicalizationError,
    InvalidArgumentError,
)
from src.modarith import crt_idempotents, factorize

# Set up logging
logger = logging.getLogger("galoiscensus")

Vector = Tuple[int, int]
Matrix = Tuple[Tuple[int, int], Tuple[int, int]]
# (p, alpha, i, x) for each prime power exactly dividing the modulus
PrimeDatum = Tuple[int, int, int, int]


def _require_modulus(m: int) -> None:
    if not isinstance(m, int) or m < 1:
        raise InvalidArgumentError(f"Modulus must be a positive integer, got {m!r}")


def _valuation(a: int, p: int) -> int:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


@dataclass(frozen=True)
class AutAction:
    """
    An order-ell automorphism of E[m], as a 2x2 integer matrix reduced mod m.

    Attributes:
        ell: Order of the automorphism (2, 3, 4 or 6)
        modulus: The m of E[m]
        matrix: Rows of the reduced matrix, acting on column vectors
    """

    ell: int
    modulus: int
    matrix: Matrix

    def apply(self, v: Vector) -> Vector:
        """Image of the vector v under the matrix."""
        (a, b), (c, d) = self.matrix
        m = self.modulus
        return ((a * v[0] + b * v[1]) % m, (c * v[0] + d * v[1]) % m)

    def power(self, k: int) -> Matrix:
        """The matrix raised to the k-th power, reduced mod m."""
        m = self.modulus
        result: Matrix = ((1 % m, 0), (0, 1 % m))
        for _ in range(k):
            result = _matmul(result, self.matrix, m)
        return result

    def determinant(self) -> int:
        (a, b), (c, d) = self.matrix
        return (a * d - b * c) % self.modulus


def _matmul(x: Matrix, y: Matrix, m: int) -> Matrix:
    return (
        (
            (x[0][0] * y[0][0] + x[0][1] * y[1][0]) % m,
            (x[0][0] * y[0][1] + x[0][1] * y[1][1]) % m,
        ),
        (
            (x[1][0] * y[0][0] + x[1][1] * y[1][0]) % m,
            (x[1][0] * y[0][1] + x[1][1] * y[1][1]) % m,
        ),
    )


def aut_action(ell: int, m: int) -> AutAction:
    """
    Build the action of the order-ell automorphism on E[m]

    Args:
        ell: Automorphism order (2, 3, 4 or 6)
        m: Modulus

    Returns:
        AutAction: The fixed integer matrix for ell reduced mod m

    Raises:
        InvalidArgumentError: If ell is unsupported or m < 1
    """
    if ell not in SUPPORTED_ELLS:
        raise InvalidArgumentError(
            f"Unsupported automorphism order: {ell}. Supported: {SUPPORTED_ELLS}"
        )
    _require_modulus(m)
    rows = AUT_MATRICES[ell]
    matrix = tuple(tuple(entry % m for entry in row) for row in rows)
    return AutAction(ell=ell, modulus=m, matrix=matrix)


@dataclass(frozen=True, eq=False)
class TorsionSubgroup:
    """
    A subgroup of (Z/mZ)^2.

    Two subgroups are equal when their element fingerprints are equal. The
    per-prime (i, x) data is present for every order-m subgroup and drives
    the membership test; elements are only materialised on demand.

    Attributes:
        modulus: The m of (Z/mZ)^2
        generators: Generators as given (or the canonical CRT lifts)
        prime_data: (p, alpha, i, x) per prime power of m, or None
    """

    modulus: int
    generators: Tuple[Vector, ...]
    prime_data: Optional[Tuple[PrimeDatum, ...]] = None
    known_elements: Optional[FrozenSet[Vector]] = field(
        default=None, repr=False, compare=False
    )

    @property
    def order(self) -> int:
        if self.prime_data is not None:
            order = 1
            for p, alpha, _, _ in self.prime_data:
                order *= p**alpha
            return order
        return len(self.elements)

    @cached_property
    def elements(self) -> FrozenSet[Vector]:
        if self.known_elements is not None:
            return self.known_elements
        if self.prime_data is not None:
            return frozenset(_elements_from_prime_data(self.modulus, self.prime_data))
        return closure(self.modulus, self.generators)

    @cached_property
    def fingerprint(self) -> Tuple[Vector, ...]:
        return tuple(sorted(self.elements))

    def contains(self, v: Vector) -> bool:
        """
        Membership test

        Args:
            v: Vector of (Z/mZ)^2

        Returns:
            bool: True if v lies in the subgroup
        """
        if self.prime_data is None:
            return (v[0] % self.modulus, v[1] % self.modulus) in self.elements
        for p, alpha, i, x in self.prime_data:
            q = p**alpha
            a, b = v[0] % q, v[1] % q
            step = p**i
            if a % step:
                return False
            if (b - (a // step) * x) % p ** (alpha - i):
                return False
        return True

    def prime_parameters(self) -> Dict[int, Tuple[int, int]]:
        """The (i, x) pair of every prime, as a dict keyed by prime."""
        if self.prime_data is None:
            return {}
        return {p: (i, x) for p, _, i, x in self.prime_data}

    def describe(self) -> str:
        """Generators formatted as '(a,b) (c,d)'."""
        return " ".join(f"({a},{b})" for a, b in self.generators)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TorsionSubgroup):
            return NotImplemented
        return self.modulus == other.modulus and self.fingerprint == other.fingerprint

    def __hash__(self) -> int:
        return hash((self.modulus, self.fingerprint))


def closure(m: int, generators: Iterable[Vector]) -> FrozenSet[Vector]:
    """
    Subgroup of (Z/mZ)^2 generated by the given vectors

    Args:
        m: Modulus
        generators: Generating vectors (any integers, reduced mod m)

    Returns:
        FrozenSet: All elements of the generated subgroup
    """
    _require_modulus(m)
    gens = [(g[0] % m, g[1] % m) for g in generators]
    elements = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                w = ((v[0] + g[0]) % m, (v[1] + g[1]) % m)
                if w not in elements:
                    elements.add(w)
                    new.append(w)
        frontier = new
    return frozenset(elements)


def _prime_elements(p: int, alpha: int, i: int, x: int) -> List[Vector]:
    q = p**alpha
    step = p**i
    span = p ** (alpha - i)
    return [
        ((t * step) % q, (t * x + s * span) % q)
        for t in range(span)
        for s in range(step)
    ]


def _elements_from_prime_data(
    m: int, prime_data: Sequence[PrimeDatum]
) -> List[Vector]:
    idempotents = crt_idempotents(m)
    parts = [
        [(idempotents[p], v) for v in _prime_elements(p, alpha, i, x)]
        for p, alpha, i, x in prime_data
    ]
    elements = []
    for combo in itertools.product(*parts):
        a = sum(e * v[0] for e, v in combo) % m
        b = sum(e * v[1] for e, v in combo) % m
        elements.append((a, b))
    return elements


def _canonical_generators(
    m: int, prime_data: Sequence[PrimeDatum]
) -> Tuple[Vector, Vector]:
    idempotents = crt_idempotents(m)
    g1 = [0, 0]
    g2 = [0, 0]
    for p, alpha, i, x in prime_data:
        e = idempotents[p]
        g1[0] += e * p**i
        g1[1] += e * x
        g2[1] += e * p ** (alpha - i)
    return ((g1[0] % m, g1[1] % m), (g2[0] % m, g2[1] % m))


def subgroup_from_prime_data(
    m: int, parameters: Mapping[int, Tuple[int, int]]
) -> TorsionSubgroup:
    """
    Build the order-m subgroup whose p-part is S_{x,i} for every prime p of m

    Args:
        m: Modulus
        parameters: prime -> (i, x) with 0 <= i <= alpha and 0 <= x < p^(alpha-i)

    Returns:
        TorsionSubgroup: The CRT-combined subgroup with canonical generators

    Raises:
        InvalidArgumentError: If the parameters do not match the primes of m
    """
    _require_modulus(m)
    factorization = factorize(m)
    if set(parameters) != {p for p, _ in factorization}:
        raise InvalidArgumentError(
            f"Parameters {dict(parameters)} do not cover the primes of {m}"
        )
    prime_data = []
    for p, alpha in factorization:
        i, x = parameters[p]
        if not 0 <= i <= alpha or not 0 <= x < p ** (alpha - i):
            raise InvalidArgumentError(
                f"(i, x) = ({i}, {x}) out of range for {p}^{alpha}"
            )
        prime_data.append((p, alpha, i, x))
    prime_data_tuple = tuple(prime_data)
    return TorsionSubgroup(
        modulus=m,
        generators=_canonical_generators(m, prime_data_tuple),
        prime_data=prime_data_tuple,
    )


def _canonicalize(m: int, elements: FrozenSet[Vector]) -> Tuple[PrimeDatum, ...]:
    prime_data = []
    for p, alpha in factorize(m):
        q = p**alpha
        projection = {(a % q, b % q) for a, b in elements}
        if len(projection) != q:
            raise CanonicalizationError(
                f"{p}-part has {len(projection)} elements, expected {q}"
            )
        nonzero = [a for a, _ in projection if a]
        i = min((_valuation(a, p) for a in nonzero), default=alpha)
        x = 0
        if i < alpha:
            step = p**i
            x = next(b for a, b in projection if a == step) % p ** (alpha - i)
        candidate = set(_prime_elements(p, alpha, i, x))
        if candidate != projection:
            raise CanonicalizationError(
                f"{p}-part is not of the form S_(x,i) for (i, x) = ({i}, {x})"
            )
        prime_data.append((p, alpha, i, x))
    return tuple(prime_data)


def subgroup_from_generators(
    m: int, gens: Sequence[Vector], require_order_m: bool = True
) -> TorsionSubgroup:
    """
    Subgroup generated by gens, with its per-prime (i, x) data recovered

    Args:
        m: Modulus
        gens: Generating vectors
        require_order_m: Raise if the generated subgroup does not have order m

    Returns:
        TorsionSubgroup: The generated subgroup

    Raises:
        CanonicalizationError: If the order requirement or canonicalization fails
    """
    _require_modulus(m)
    reduced = tuple((g[0] % m, g[1] % m) for g in gens)
    elements = closure(m, reduced)
    if len(elements) != m:
        if require_order_m:
            raise CanonicalizationError(
                f"Generated subgroup has order {len(elements)}, expected {m}"
            )
        return TorsionSubgroup(modulus=m, generators=reduced, known_elements=elements)
    return TorsionSubgroup(
        modulus=m,
        generators=reduced,
        prime_data=_canonicalize(m, elements),
        known_elements=elements,
    )


def is_stable(subgroup: TorsionSubgroup, action: AutAction) -> bool:
    """
    Check whether the automorphism maps the subgroup onto itself

    Args:
        subgroup: Subgroup of (Z/mZ)^2
        action: Automorphism of the same modulus

    Returns:
        bool: True if the image of every generator lies in the subgroup

    Raises:
        InvalidArgumentError: If the moduli differ
    """
    if subgroup.modulus != action.modulus:
        raise InvalidArgumentError(
            f"Modulus mismatch: subgroup {subgroup.modulus}, action {action.modulus}"
        )
    return all(subgroup.contains(action.apply(g)) for g in subgroup.generators)


@lru_cache(maxsize=64)
def _oracle_subgroups(m: int) -> Tuple[TorsionSubgroup, ...]:
    vectors = [(a, b) for a in range(m) for b in range(m)]
    cyclic = {}
    for g in vectors:
        multiples = []
        v = (0, 0)
        while True:
            multiples.append(v)
            v = ((v[0] + g[0]) % m, (v[1] + g[1]) % m)
            if v == (0, 0):
                break
        cyclic[g] = multiples

    found: Dict[FrozenSet[Vector], Tuple[Vector, Vector]] = {}
    for g1 in vectors:
        first = cyclic[g1]
        first_set = frozenset(first)
        for g2 in vectors:
            if g2 in first_set:
                elements = first_set
            else:
                elements = frozenset(
                    ((c[0] + k[0]) % m, (c[1] + k[1]) % m)
                    for c in first
                    for k in cyclic[g2]
                )
            if len(elements) == m and elements not in found:
                found[elements] = (g1, g2)

    subgroups = [
        TorsionSubgroup(
            modulus=m,
            generators=gens,
            prime_data=_canonicalize(m, elements),
            known_elements=elements,
        )
        for elements, gens in found.items()
    ]
    subgroups.sort(key=lambda s: s.fingerprint)
    logger.debug(f"Closure oracle found {len(subgroups)} order-{m} subgroups")
    return tuple(subgroups)


def closure_oracle_enumerate(
    m: int, bound: int = DEFAULT_ORACLE_BOUND
) -> List[TorsionSubgroup]:
    """
    Every order-m subgroup of (Z/mZ)^2, found by closing all generator pairs

    Args:
        m: Modulus
        bound: Largest m accepted (cost grows as m^4 closures)

    Returns:
        List[TorsionSubgroup]: Subgroups sorted by fingerprint

    Raises:
        BoundExceededError: If m exceeds the bound
    """
    _require_modulus(m)
    if m > bound:
        raise BoundExceededError(f"Oracle bound is {bound}, got m = {m}")
    return list(_oracle_subgroups(m))


def prime_power_parameters(p: int, alpha: int) -> List[Tuple[int, int]]:
    """All (i, x) with 0 <= i <= alpha and 0 <= x < p^(alpha-i), lexicographically."""
    return [(i, x) for i in range(alpha + 1) for x in range(p ** (alpha - i))]


def combine_prime_parameters(
    m: int, per_prime: Sequence[Tuple[int, Sequence[Tuple[int, int]]]]
) -> List[TorsionSubgroup]:
    """
    CRT-combine per-prime parameter choices into subgroups of (Z/mZ)^2

    Args:
        m: Modulus
        per_prime: (prime, admissible (i, x) list) in ascending prime order

    Returns:
        List[TorsionSubgroup]: One subgroup per combination, in lexicographic order
    """
    primes = [p for p, _ in per_prime]
    return [
        subgroup_from_prime_data(m, dict(zip(primes, choice)))
        for choice in itertools.product(*(choices for _, choices in per_prime))
    ]


def enumerate_order_m_subgroups(m: int) -> List[TorsionSubgroup]:
    """
    Every order-m subgroup of (Z/mZ)^2, built from the S_{x,i} parametrization

    Args:
        m: Modulus

    Returns:
        List[TorsionSubgroup]: Subgroups in lexicographic (prime, i, x) order
    """
    _require_modulus(m)
    per_prime = [(p, prime_power_parameters(p, alpha)) for p, alpha in factorize(m)]
    return combine_prime_parameters(m, per_prime)
