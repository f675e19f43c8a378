"""
Stable subgroup counting module for GaloisCensus.

This module computes psi_ell(E, m), the number of xi-stable subgroups of order m
in E[m] for an automorphism xi of order ell, in three independent ways:

- the closed form (multiplicative, with explicit prime-power values),
- constructive enumeration of the S_{x,i} subgroups satisfying the stability
  criterion (2i <= alpha and x = p^i y with p^(alpha-2i) | f(y)),
- the closure oracle filtered by an explicit stability test.
"""

import logging
from enum import Enum
from typing import List, Tuple

from sympy import isprime

from src.config import (
    ADMISSIBLE_ELLS,
    DEFAULT_CONSTRUCTIVE_BOUND,
    DEFAULT_ORACLE_BOUND,
    SUPPORTED_ELLS,
)
from src.errors import BoundExceededError, InvalidArgumentError
from src.modarith import CongruenceKind, congruence_roots, factorize, sigma
from src.torsion import (
    TorsionSubgroup,
    aut_action,
    closure_oracle_enumerate,
    combine_prime_parameters,
    is_stable,
    prime_power_parameters,
)

# Set up logging
logger = logging.getLogger("galoiscensus")


class JClass(Enum):
    """Automorphism class of an elliptic curve, by j-invariant."""

    GENERIC = "generic"
    J0 = "0"
    J1728 = "1728"

    @property
    def admissible_ells(self) -> List[int]:
        return ADMISSIBLE_ELLS[self.value]

    def admits(self, ell: int) -> bool:
        return ell in ADMISSIBLE_ELLS[self.value]

    @classmethod
    def from_label(cls, label: str) -> "JClass":
        """
        Parse a CLI label ('generic', '0' or '1728')

        Raises:
            InvalidArgumentError: If the label is unknown
        """
        for member in cls:
            if member.value == str(label).strip().lower():
                return member
        raise InvalidArgumentError(
            f"Unknown j-class: {label!r}. Expected one of: generic, 0, 1728"
        )


def _require_ell(ell: int) -> None:
    if ell not in SUPPORTED_ELLS:
        raise InvalidArgumentError(
            f"Unsupported automorphism order: {ell}. Supported: {SUPPORTED_ELLS}"
        )


def congruence_for(ell: int) -> CongruenceKind:
    """The congruence behind the stability criterion for ell in {3, 4, 6}."""
    _require_ell(ell)
    if ell == 2:
        raise InvalidArgumentError("Every subgroup is stable under negation")
    if ell == 4:
        return CongruenceKind.Z_SQ_PLUS_1
    return CongruenceKind.Z_SQ_MINUS_Z_PLUS_1


def psi_prime_power(ell: int, p: int, alpha: int) -> int:
    """
    Number of stable order-p^alpha subgroups of (Z/p^alpha Z)^2

    Args:
        ell: Automorphism order (2, 3, 4 or 6)
        p: Prime
        alpha: Exponent (alpha >= 0)

    Returns:
        int: The closed-form prime-power value

    Raises:
        InvalidArgumentError: If ell is unsupported, p not prime or alpha < 0
    """
    _require_ell(ell)
    if not isinstance(p, int) or not isprime(p):
        raise InvalidArgumentError(f"{p!r} is not a prime")
    if not isinstance(alpha, int) or alpha < 0:
        raise InvalidArgumentError(f"alpha must be non-negative, got {alpha!r}")

    if alpha == 0:
        return 1
    if ell == 2:
        return sigma(p**alpha)
    if ell in (3, 6):
        if p == 3:
            return 1
        if p % 3 == 1:
            return alpha + 1
        return 2 * (alpha // 2) - alpha + 1
    # ell == 4
    if p == 2:
        return 1
    if p % 4 == 1:
        return alpha + 1
    return 2 * (alpha // 2) - alpha + 1


def psi(ell: int, j: JClass, m: int) -> int:
    """
    psi_ell(E, m) for a curve of class j

    Args:
        ell: Automorphism order
        j: j-invariant class of the curve
        m: Positive integer

    Returns:
        int: 0 if the curve has no automorphism of order ell, otherwise the
        product of psi_prime_power over the factorization of m
    """
    _require_ell(ell)
    if not isinstance(m, int) or m < 1:
        raise InvalidArgumentError(f"m must be a positive integer, got {m!r}")
    if not j.admits(ell):
        return 0
    value = 1
    for p, alpha in factorize(m):
        value *= psi_prime_power(ell, p, alpha)
        if value == 0:
            break
    return value


def psi_breakdown(ell: int, j: JClass, m: int) -> List[Tuple[int, int, int]]:
    """
    Per-prime-power factors of psi

    Returns:
        List[Tuple[int, int, int]]: (p, alpha, psi_prime_power) for each p^alpha || m,
        or [] when ell is not admissible for j
    """
    _require_ell(ell)
    if not j.admits(ell):
        return []
    return [(p, alpha, psi_prime_power(ell, p, alpha)) for p, alpha in factorize(m)]


def stable_prime_parameters(ell: int, p: int, alpha: int) -> List[Tuple[int, int]]:
    """
    The (i, x) pairs of the stable S_{x,i} in (Z/p^alpha Z)^2

    For ell = 2 this is every pair. Otherwise i runs over 2i <= alpha and
    x = p^i * y where y < p^(alpha-2i) is a root of the ell-congruence.
    """
    if ell == 2:
        return prime_power_parameters(p, alpha)
    kind = congruence_for(ell)
    parameters = []
    for i in range(alpha // 2 + 1):
        for y in congruence_roots(kind, p ** (alpha - 2 * i)):
            parameters.append((i, p**i * y))
    return parameters


def enumerate_stable_subgroups(
    ell: int, m: int, bound: int = DEFAULT_CONSTRUCTIVE_BOUND
) -> List[TorsionSubgroup]:
    """
    Constructively enumerate the stable order-m subgroups of (Z/mZ)^2

    Args:
        ell: Automorphism order
        m: Modulus
        bound: Largest m accepted

    Returns:
        List[TorsionSubgroup]: Stable subgroups in lexicographic (prime, i, x) order

    Raises:
        BoundExceededError: If m exceeds the bound
    """
    _require_ell(ell)
    if not isinstance(m, int) or m < 1:
        raise InvalidArgumentError(f"m must be a positive integer, got {m!r}")
    if m > bound:
        raise BoundExceededError(f"Constructive bound is {bound}, got m = {m}")
    per_prime = [
        (p, stable_prime_parameters(ell, p, alpha)) for p, alpha in factorize(m)
    ]
    subgroups = combine_prime_parameters(m, per_prime)
    logger.debug(
        f"Enumerated {len(subgroups)} subgroups of order {m} stable for ell={ell}"
    )
    return subgroups


def stable_count_oracle(ell: int, m: int, bound: int = DEFAULT_ORACLE_BOUND) -> int:
    """
    Count stable subgroups among the closure oracle's order-m subgroups

    Args:
        ell: Automorphism order
        m: Modulus
        bound: Oracle bound

    Returns:
        int: Number of oracle subgroups passing is_stable
    """
    _require_ell(ell)
    action = aut_action(ell, m)
    return sum(1 for s in closure_oracle_enumerate(m, bound) if is_stable(s, action))
