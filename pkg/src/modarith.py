"""
Modular arithmetic module for GaloisCensus.

This module provides exact integer helpers: factorization, the divisor-sum
function, CRT recombination, and root counts of the two quadratic congruences
z^2 - z + 1 and z^2 + 1 modulo prime powers.
"""

import logging
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from sympy import factorint, isprime
from sympy.ntheory.modular import crt

from src.errors import InvalidArgumentError

# Set up logging
logger = logging.getLogger("galoiscensus")

Factorization = List[Tuple[int, int]]


class CongruenceKind(Enum):
    """The two quadratic congruences the stability criteria reduce to."""

    Z_SQ_MINUS_Z_PLUS_1 = "z^2-z+1"
    Z_SQ_PLUS_1 = "z^2+1"

    def evaluate(self, z: int) -> int:
        """Value of the polynomial at z (not reduced)."""
        if self is CongruenceKind.Z_SQ_MINUS_Z_PLUS_1:
            return z * z - z + 1
        return z * z + 1


def _require_positive(m: int, name: str = "m") -> None:
    if not isinstance(m, int) or m < 1:
        raise InvalidArgumentError(f"{name} must be a positive integer, got {m!r}")


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or not isprime(p):
        raise InvalidArgumentError(f"{p!r} is not a prime")


@lru_cache(maxsize=65536)
def _factor_tuple(m: int) -> Tuple[Tuple[int, int], ...]:
    return tuple(sorted((int(p), int(e)) for p, e in factorint(m).items()))


def factorize(m: int) -> Factorization:
    """
    Factor a positive integer into prime powers

    Args:
        m: Integer to factor (m >= 1)

    Returns:
        Factorization: (prime, exponent) pairs sorted by prime; [] for 1

    Raises:
        InvalidArgumentError: If m is not a positive integer
    """
    _require_positive(m)
    return list(_factor_tuple(m))


def sigma(m: int) -> int:
    """
    Sum of the positive divisors of m, computed multiplicatively

    Args:
        m: Positive integer

    Returns:
        int: Product of (p^(a+1) - 1) / (p - 1) over the factorization of m
    """
    _require_positive(m)
    total = 1
    for p, alpha in _factor_tuple(m):
        total *= (p ** (alpha + 1) - 1) // (p - 1)
    return total


def sigma_bruteforce(m: int) -> int:
    """Sum of divisors by direct enumeration (oracle for sigma)."""
    _require_positive(m)
    return sum(d for d in range(1, m + 1) if m % d == 0)


def count_congruence_roots(kind: CongruenceKind, p: int, beta: int) -> int:
    """
    Number of roots of a quadratic congruence in Z/p^beta Z

    Args:
        kind: Which polynomial (z^2 - z + 1 or z^2 + 1)
        p: Prime
        beta: Exponent (beta >= 0); beta = 0 is the trivial ring with one root

    Returns:
        int: 0, 1 or 2

    Raises:
        InvalidArgumentError: If p is not prime or beta is negative
    """
    _require_prime(p)
    if not isinstance(beta, int) or beta < 0:
        raise InvalidArgumentError(f"beta must be a non-negative integer, got {beta!r}")

    if beta == 0:
        return 1

    if kind is CongruenceKind.Z_SQ_MINUS_Z_PLUS_1:
        if p == 3:
            return 1 if beta == 1 else 0
        return 2 if p % 3 == 1 else 0

    if p == 2:
        return 1 if beta == 1 else 0
    # -1 is a square mod p^beta only when p = 1 mod 4
    return 2 if p % 4 == 1 else 0


def congruence_roots(kind: CongruenceKind, modulus: int) -> List[int]:
    """
    All residues r in [0, modulus) with kind(r) = 0 mod modulus, by exhaustive scan

    Args:
        kind: Which polynomial
        modulus: Positive modulus; modulus 1 yields [0]

    Returns:
        List[int]: Sorted roots
    """
    _require_positive(modulus, "modulus")
    return [z for z in range(modulus) if kind.evaluate(z) % modulus == 0]


def count_congruence_roots_bruteforce(kind: CongruenceKind, modulus: int) -> int:
    """Root count by scanning every residue (oracle for count_congruence_roots)."""
    return len(congruence_roots(kind, modulus))


def crt_combine(residues: Sequence[Tuple[int, int]]) -> int:
    """
    Combine (residue, modulus) pairs with pairwise coprime moduli

    Args:
        residues: Sequence of (residue, modulus) pairs

    Returns:
        int: The residue modulo the product of the moduli (0 for an empty input)
    """
    if not residues:
        return 0
    values = [r for r, _ in residues]
    moduli = [q for _, q in residues]
    combined = crt(moduli, values)
    if combined is None:
        raise InvalidArgumentError(f"Moduli are not coprime: {moduli}")
    return int(combined[0])


@lru_cache(maxsize=4096)
def _idempotents(m: int) -> Tuple[Tuple[int, int, int], ...]:
    result = []
    for p, alpha in _factor_tuple(m):
        q = p**alpha
        rest = m // q
        e = crt_combine([(1, q), (0, rest)]) if rest > 1 else 1 % m
        result.append((p, q, e))
    return tuple(result)


def crt_idempotents(m: int) -> Dict[int, int]:
    """
    CRT idempotents of Z/mZ

    Args:
        m: Positive integer

    Returns:
        Dict[int, int]: prime -> e_p with e_p = 1 mod p^a and e_p = 0 mod m / p^a
    """
    _require_positive(m)
    return {p: e for p, _, e in _idempotents(m)}
