"""Exact integer and rational arithmetic primitives.

All quantities in this package (d-invariants, canonical squares, orbifold
Euler characteristics, linking-form values) are exact rationals; nothing is
ever rounded.  Rationals are stdlib ``fractions.Fraction`` values, which are
always stored reduced with a positive denominator and are backed by
arbitrary-precision integers, so arithmetic can neither overflow nor lose
exactness.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "Rational",
    "hj_expand",
    "hj_value",
    "is_perfect_square",
    "is_square_unit_mod",
    "unit_squares_mod",
    "factorize",
    "factor_string",
]

# Canonical exact-rational type used across the package.
Rational = Fraction


def hj_expand(p: int, q: int) -> tuple[int, ...]:
    """Hirzebruch-Jung continued fraction of p/q.

    Returns the unique expansion p/q = [a_1, ..., a_l] with every a_i >= 2,
    where [a_1, ..., a_l] = a_1 - 1/(a_2 - 1/(... - 1/a_l)).

    Requires 0 < q < p and gcd(p, q) = 1.
    """
    if not (isinstance(p, int) and isinstance(q, int)):
        raise TypeError("p and q must be integers")
    if not 0 < q < p:
        raise ValueError(f"need 0 < q < p, got (p, q) = ({p}, {q})")
    if math.gcd(p, q) != 1:
        raise ValueError(f"p and q must be coprime, got ({p}, {q})")
    coeffs = []
    while q > 0:
        a = -(-p // q)  # ceiling division
        coeffs.append(a)
        p, q = q, a * q - p
    return tuple(coeffs)


def hj_value(coeffs) -> tuple[int, int]:
    """Evaluate a Hirzebruch-Jung continued fraction to a reduced (p, q).

    Inverse of :func:`hj_expand`; every coefficient must be >= 2.
    """
    coeffs = tuple(coeffs)
    if not coeffs:
        raise ValueError("empty coefficient sequence")
    if any(not isinstance(a, int) or a < 2 for a in coeffs):
        raise ValueError(f"all coefficients must be integers >= 2, got {coeffs}")
    # Evaluate from the right: value = a - 1/rest, kept as p/q in lowest terms.
    p, q = coeffs[-1], 1
    for a in reversed(coeffs[:-1]):
        p, q = a * p - q, p
    assert math.gcd(p, q) == 1 and p > q > 0
    return p, q


def is_perfect_square(n: int) -> bool:
    """True iff n is the square of an integer (n >= 1)."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    r = math.isqrt(n)
    return r * r == n


def unit_squares_mod(n: int) -> frozenset[int]:
    """The set {u^2 mod n : gcd(u, n) = 1} of square units modulo n."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return frozenset(u * u % n for u in range(1, n) if math.gcd(u, n) == 1)


def is_square_unit_mod(c: int, n: int) -> bool:
    """True iff c is congruent to the square of a unit modulo n.

    Requires gcd(c, n) = 1.  Decided by exhaustive check over residues; the
    moduli arising here are small products of singularity-link orders.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if math.gcd(c, n) != 1:
        raise ValueError(f"c must be a unit mod n, got gcd({c}, {n}) != 1")
    return c % n in unit_squares_mod(n)


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as a list of (prime, exponent) pairs."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out

_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def factor_string(n: int) -> str:
    """Render n >= 1 as a prime factorization string, e.g. 84 -> '2²·3·7'."""
    if n == 1:
        return "1"
    parts = []
    for prime, exp in factorize(n):
        if exp == 1:
            parts.append(str(prime))
        else:
            parts.append(f"{prime}{str(exp).translate(_SUPERSCRIPTS)}")
    return "·".join(parts)
