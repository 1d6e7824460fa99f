"""Linking forms on cyclic groups and the boundary linking-form obstruction.

A nondegenerate symmetric form on Z/n valued in Q/Z is recorded by the
residue c with lambda(g, g) = c/n on a generator; two forms c/n and c'/n are
isomorphic exactly when c' = c u^2 (mod n) for a unit u.  The lens space
L(p,q) carries the form q/p, a +k surgery on any knot carries -1/k, and the
form of an orientation reversal is the negation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import exact
from .catalog import LensLink, SingularityType, TrefoilSurgeryLink
from .configuration import Configuration, ObstructionVerdict, Outcome

__all__ = [
    "CyclicLinkingForm",
    "lens_linking_form",
    "surgery_linking_form",
    "reversed_link_form",
    "connected_sum_form",
    "is_isomorphic",
    "linking_obstruction",
]


@dataclass(frozen=True)
class CyclicLinkingForm:
    """The form lambda(g,g) = value/order on a generator g of Z/order."""
    order: int
    value: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")
        if self.order == 1:
            if self.value != 0:
                raise ValueError("the trivial group carries only the zero form")
        elif not (0 < self.value < self.order and math.gcd(self.value, self.order) == 1):
            raise ValueError(
                f"form value must be a reduced unit residue, got {self.value}/{self.order}")

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def negate(self) -> "CyclicLinkingForm":
        if self.is_trivial:
            return self
        return CyclicLinkingForm(self.order, (-self.value) % self.order)

    def __str__(self):
        return "0" if self.is_trivial else f"{self.value}/{self.order}"


def lens_linking_form(p: int, q: int) -> CyclicLinkingForm:
    """Linking form of L(p,q): the class (q/p) on Z/p."""
    if p == 1:
        if q != 0:
            raise ValueError("the trivial lens space is L(1,0)")
        return CyclicLinkingForm(1, 0)
    if not (0 < q < p and math.gcd(p, q) == 1):
        raise ValueError(f"invalid lens space parameters ({p}, {q})")
    return CyclicLinkingForm(p, q)


def surgery_linking_form(framing: int) -> CyclicLinkingForm:
    """Linking form (-1/k) of +k surgery on a knot, independent of the knot."""
    if framing < 1:
        raise ValueError(f"framing must be a positive integer, got {framing}")
    if framing == 1:
        return CyclicLinkingForm(1, 0)
    return CyclicLinkingForm(framing, framing - 1)


def reversed_link_form(t: SingularityType) -> CyclicLinkingForm | None:
    """Linking form of the orientation-reversed link of t, or None if unknown."""
    link = t.link
    if isinstance(link, LensLink):
        return lens_linking_form(link.p, link.q).negate()
    if isinstance(link, TrefoilSurgeryLink):
        # The link is a negative surgery on the left trefoil; its reversal is
        # the positive surgery on the right trefoil.
        return surgery_linking_form(-link.framing)
    return None


def connected_sum_form(forms) -> CyclicLinkingForm:
    """Compose forms on groups of pairwise coprime order over the diagonal
    generator (1, ..., 1) of the product group."""
    forms = [f for f in forms if not f.is_trivial]
    if not forms:
        return CyclicLinkingForm(1, 0)
    orders = [f.order for f in forms]
    for i, a in enumerate(orders):
        for b in orders[i + 1:]:
            if math.gcd(a, b) != 1:
                raise ValueError(f"orders {a} and {b} are not coprime")
    total = 1
    for n in orders:
        total *= n
    value = sum(f.value * (total // f.order) for f in forms) % total
    return CyclicLinkingForm(total, value)


def is_isomorphic(f: CyclicLinkingForm, g: CyclicLinkingForm) -> bool:
    """Whether two cyclic forms are isomorphic (equal up to a unit square)."""
    if f.order != g.order:
        return False
    if f.is_trivial:
        return True
    ratio = g.value * pow(f.value, -1, f.order) % f.order
    return ratio in exact.unit_squares_mod(f.order)


def linking_obstruction(config: Configuration) -> ObstructionVerdict:
    """Boundary linking-form test.

    The complement of the singularities is a 4-manifold with intersection
    form (N), N the product of the link homology orders, so its boundary
    carries the form (-1/N).  The boundary is also the sum of the reversed
    links, whose composed form c/N must therefore satisfy -c = u^2 (mod N)
    for a unit u.  Members whose links have non-cyclic H_1 must be screened
    out before this test; members with cyclic H_1 but untabulated linking
    form yield NOT_APPLICABLE.
    """
    name = "linking_form"
    for t in config.members:
        if not t.h1_link.is_cyclic:
            raise ValueError(
                f"{t.name} has non-cyclic link homology; screen it out before "
                "applying the linking-form test")
    forms = []
    for t in config.members:
        f = reversed_link_form(t)
        if f is None:
            return ObstructionVerdict(
                name, Outcome.NOT_APPLICABLE,
                {"unknown_form": t.name},
                note=f"linking form of the link of {t.name} is not tabulated",
            )
        forms.append(f)
    composed = connected_sum_form(forms)
    modulus = composed.order
    if composed.is_trivial:
        return ObstructionVerdict(name, Outcome.PASS, {"composed": "0", "modulus": 1})
    residue = (-composed.value) % modulus
    evidence = {
        "composed": str(composed),
        "required_class": f"-1/{modulus}",
        "modulus": modulus,
        "residue": residue,
    }
    if exact.is_square_unit_mod(residue, modulus):
        unit = next(u for u in range(1, modulus)
                    if math.gcd(u, modulus) == 1 and u * u % modulus == residue)
        evidence["unit"] = unit
        return ObstructionVerdict(name, Outcome.PASS, evidence)
    evidence["unit_squares"] = sorted(exact.unit_squares_mod(modulus))
    return ObstructionVerdict(
        name, Outcome.OBSTRUCTED, evidence,
        note=f"{residue} is not a square unit modulo {modulus}",
    )
