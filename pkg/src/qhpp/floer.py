"""Heegaard Floer d-invariants of lens spaces and trefoil surgeries.

Lens-space d-invariants follow the recursion

    d(L(p,q), i) = 1/4 - (2i + 1 - p - q)^2 / (4pq) - d(L(q, p mod q), i mod q)

grounded at d(L(1,0), 0) = d(S^3) = 0, for L(p,q) oriented as -p/q surgery
on the unknot.  Surgeries on the right-handed trefoil reduce to lens values
through the mapping-cone surgery formula with V_0 = 1 and V_s = 0 for s > 0.
Orientation reversal enters in exactly one place: d(-Y, s) = -d(Y, s).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .catalog import LensLink, SingularityType, TrefoilSurgeryLink
from .configuration import Configuration, ObstructionVerdict, Outcome

__all__ = [
    "SpinDataUnavailable",
    "d_lens",
    "spin_labels",
    "lens_spin_d_invariants",
    "v_trefoil",
    "d_trefoil_surgery",
    "trefoil_surgery_d_invariants",
    "link_d_invariants",
    "spin_d_invariants",
    "spin_sum_obstruction",
    "SPIN_SUM_TARGET",
]

SPIN_SUM_TARGET = Fraction(1, 4)


class SpinDataUnavailable(Exception):
    """Spin d-invariants of this link are neither computable nor tabulated."""


def _validate_lens(p: int, q: int, i: int) -> None:
    if p == 1:
        if q != 0:
            raise ValueError(f"L(1,q) must be written L(1,0), got q={q}")
    elif not (0 < q < p and math.gcd(p, q) == 1):
        raise ValueError(f"invalid lens space parameters (p, q) = ({p}, {q})")
    if not 0 <= i < p:
        raise ValueError(f"spin-c label {i} out of range for L({p},{q})")


@lru_cache(maxsize=None)
def d_lens(p: int, q: int, i: int) -> Fraction:
    """d-invariant d(L(p,q), i), with L(p,q) the -p/q surgery on the unknot."""
    _validate_lens(p, q, i)
    if p == 1:
        return Fraction(0)
    correction = Fraction((2 * i + 1 - p - q) ** 2, 4 * p * q)
    return Fraction(1, 4) - correction - d_lens(q, p % q, i % q)


def spin_labels(p: int, q: int) -> frozenset[int]:
    """Spin-c labels of L(p,q) induced by spin structures.

    These are the integers among (q-1)/2 and (p+q-1)/2: one label for odd p,
    two for even p.
    """
    _validate_lens(p, q, 0)
    labels = set()
    if (q - 1) % 2 == 0:
        labels.add((q - 1) // 2)
    if (p + q - 1) % 2 == 0:
        labels.add((p + q - 1) // 2)
    return frozenset(labels)


def lens_spin_d_invariants(p: int, q: int) -> frozenset[Fraction]:
    return frozenset(d_lens(p, q, i) for i in spin_labels(p, q))


def v_trefoil(s: int) -> int:
    """V_s of the right-handed trefoil: 1 at s = 0, else 0."""
    if s < 0:
        raise ValueError(f"need s >= 0, got {s}")
    return 1 if s == 0 else 0


def d_trefoil_surgery(p: int, q: int, i: int) -> Fraction:
    """d-invariant of p/q surgery on the right-handed trefoil at label i."""
    if p < 1 or q < 1 or math.gcd(p, q) != 1:
        raise ValueError(f"invalid surgery coefficient {p}/{q}")
    if not 0 <= i < p:
        raise ValueError(f"spin-c label {i} out of range for {p}/{q} surgery")
    if p == 1:
        d_reversed_lens = Fraction(0)
    else:
        d_reversed_lens = -d_lens(p, q % p, i)
    vmax = max(v_trefoil(i // q), v_trefoil((p + q + 1 - i) // q))
    return d_reversed_lens - 2 * vmax


def trefoil_surgery_d_invariants(p: int, q: int = 1) -> tuple[Fraction, ...]:
    """All p/q-surgery d-invariants, indexed by spin-c label 0..p-1."""
    return tuple(d_trefoil_surgery(p, q, i) for i in range(p))


def _surgery_spin_labels(k: int) -> frozenset[int]:
    # Self-conjugate labels of an integral k-surgery: 2i = 0 (mod k).
    labels = {0}
    if k % 2 == 0:
        labels.add(k // 2)
    return frozenset(labels)


def link_d_invariants(t: SingularityType) -> tuple[Fraction, ...]:
    """The full d-invariant multiset of the link of t, sorted descending."""
    link = t.link
    if isinstance(link, LensLink):
        vals = [d_lens(link.p, link.q, i) for i in range(link.p)]
    elif isinstance(link, TrefoilSurgeryLink):
        k = -link.framing
        vals = [-d for d in trefoil_surgery_d_invariants(k)]
    else:
        raise SpinDataUnavailable(f"d-invariants of {link} are not tabulated")
    return tuple(sorted(vals, reverse=True))


def spin_d_invariants(t: SingularityType) -> frozenset[Fraction]:
    """d-invariants of the link of t at its spin structures.

    Lens links are computed from the recursion; D-type and the one needed
    non-cyclic index-three link carry tabulated values.  For the remaining
    non-cyclic index-three species the data is unavailable and a
    SpinDataUnavailable error is raised (never an empty set).
    """
    if t.species == "D":
        return frozenset({Fraction(t.n, 4), Fraction(t.n - 4, 4)})
    if t.species == "D(2)" and t.n == 9:
        # The reversed link is the Seifert manifold (-1; 1/2, 1/2, 3/19) with
        # spin d-invariants -5/4 and -9/4; negate back to the link itself.
        return frozenset({Fraction(5, 4), Fraction(9, 4)})
    if t.species in ("D(1)", "D(2)"):
        raise SpinDataUnavailable(f"spin d-invariants of {t.name} are not tabulated")
    link = t.link
    if isinstance(link, LensLink):
        return lens_spin_d_invariants(link.p, link.q)
    if isinstance(link, TrefoilSurgeryLink):
        k = -link.framing
        return frozenset(-d_trefoil_surgery(k, 1, i) for i in _surgery_spin_labels(k))
    raise SpinDataUnavailable(f"spin d-invariants of {link} are not tabulated")


def spin_sum_obstruction(config: Configuration) -> ObstructionVerdict:
    """Connected-sum spin d-invariant test.

    When the product of the link homology orders is even, the boundary of
    the curve-complement 4-manifold is spin, which forces some choice of one
    spin d-invariant per singularity to sum to exactly 1/4.  OBSTRUCTED means
    no choice attains 1/4; the evidence lists every attempted sum.
    """
    name = "spin_sum"
    if config.h1_product % 2 == 1:
        return ObstructionVerdict(
            name, Outcome.NOT_APPLICABLE,
            {"h1_product": config.h1_product},
            note="product of link homology orders is odd",
        )
    value_sets = []
    try:
        for t in config.members:
            value_sets.append(sorted(spin_d_invariants(t)))
    except SpinDataUnavailable as exc:
        return ObstructionVerdict(
            name, Outcome.NOT_APPLICABLE,
            {"h1_product": config.h1_product, "unavailable": str(exc)},
            note="spin d-invariant data unavailable; no verdict",
        )
    per_member = [[t.name, [str(v) for v in vals]]
                  for t, vals in zip(config.members, value_sets)]
    sums = sorted({sum(choice, Fraction(0)) for choice in product(*value_sets)})
    evidence = {
        "h1_product": config.h1_product,
        "per_member": per_member,
        "sums": [str(s) for s in sums],
        "target": str(SPIN_SUM_TARGET),
    }
    if SPIN_SUM_TARGET in sums:
        witness = next(c for c in product(*value_sets) if sum(c, Fraction(0)) == SPIN_SUM_TARGET)
        evidence["witness"] = [str(v) for v in witness]
        return ObstructionVerdict(name, Outcome.PASS, evidence)
    return ObstructionVerdict(name, Outcome.OBSTRUCTED, evidence)
