"""Candidate enumeration and the full screening pipeline.

For each index the engine first enumerates every singularity configuration
allowed by the elementary constraints (imported Gorenstein classification,
pairwise coprimality of the link homology orders, cyclic link homology,
positivity of the canonical square, the five-singularity bound), then runs
the obstruction filters in a fixed order:

    cyclic_h1, arithmetic (square D), bmy, donaldson, linking_form, spin_sum

Every filter is an independent predicate of the configuration, so the
surviving set does not depend on the order of application.  A configuration
survives when no filter reports OBSTRUCTED.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

from . import catalog, exact, floer, lattice, linking
from .catalog import SingularityType
from .configuration import Configuration, ObstructionVerdict, Outcome

__all__ = [
    "enumerate_candidates",
    "index3_case",
    "cyclic_h1_filter",
    "arithmetic_filter",
    "bmy_filter",
    "CandidateReport",
    "ClassificationReport",
    "classify",
    "replay_verdict",
    "FILTER_ORDER",
]

FILTER_ORDER = ("cyclic_h1", "arithmetic", "bmy", "donaldson", "linking_form", "spin_sum")

# The six index-three case families.  Case 4 pools the A1(2) species with
# the A(2,2) family: both carry the same canonical-square correction.
_INDEX3_CASES = (
    (1, (("A1(1)", (1,)),)),
    (2, (("A(1,1)", None),)),
    (3, (("A(1,2)", None),)),
    (4, (("A1(2)", (1,)), ("A(2,2)", None))),
    (5, (("D(1)", None),)),
    (6, (("D(2)", None),)),
)


def _l_max(dp_total: Fraction) -> int:
    """Largest L with 9 - L - dp_total > 0."""
    bound = Fraction(9) - dp_total
    return int(bound) - 1 if bound.denominator == 1 else math.floor(bound)


def _gorenstein_pool(curve_budget: int) -> list[SingularityType]:
    """Rational double points with cyclic link homology fitting the budget.

    D_n with even n is dropped here: its link has H_1 = Z/2 + Z/2, which the
    boundary cyclicity constraint forbids outright.
    """
    pool = [catalog.lookup("A", m) for m in range(1, curve_budget + 1)]
    pool += [catalog.lookup("D", m) for m in range(5, curve_budget + 1, 2)]
    pool += [catalog.lookup("E", m) for m in (6, 7, 8) if m <= curve_budget]
    return pool


def _coprime(a: int, b: int) -> bool:
    return math.gcd(a, b) == 1


def _coprime_away_from_6(a: int, b: int) -> bool:
    g = math.gcd(a, b)
    return g % 2 != 0 and g % 3 != 0


def _extend_base(base: SingularityType, curve_budget: int,
                 base_coprime=_coprime) -> list[Configuration]:
    """All configurations {base} + Gorenstein extras within the curve budget.

    Extras are pairwise coprime in det; coprimality against the base is
    checked with ``base_coprime``.  At most four singularities in total: a
    configuration with five is Gorenstein (type 2A3 3A1), which no
    non-Gorenstein base matches.
    """
    pool = [t for t in _gorenstein_pool(curve_budget)
            if base_coprime(base.det_r, t.det_r)]
    out = []
    for size in range(0, 4):
        for extras in combinations_with_replacement(pool, size):
            if sum(t.curve_count for t in extras) > curve_budget:
                continue
            dets = [t.det_r for t in extras]
            if any(not _coprime(a, b) for i, a in enumerate(dets) for b in dets[i + 1:]):
                continue
            out.append(Configuration.of((base,) + extras))
    return out


def _sorted_configs(configs) -> tuple[Configuration, ...]:
    return tuple(sorted(configs, key=lambda c: (c.members[0].sort_key(), c.L, c.key())))


@lru_cache(maxsize=None)
def enumerate_candidates(index: int, h1_trivial: bool = True) -> tuple[Configuration, ...]:
    """All candidate configurations of the given index for a rational
    homology projective plane whose smooth locus has trivial H_1."""
    if not h1_trivial:
        raise ValueError("only the H_1(smooth locus) = 0 pipeline is implemented")
    if index == 1:
        # Numerically trivial K is excluded when H_1 of the smooth locus
        # vanishes, so only the 27 imported types with K nontrivial remain;
        # keep those with pairwise coprime determinants.
        configs = [Configuration.of(ms) for ms in catalog.GORENSTEIN_K_NONTRIVIAL]
        return _sorted_configs(c for c in configs if c.dets_pairwise_coprime())
    if index == 2:
        # Coprimality forces exactly one index-two singularity: two K's have
        # determinants 4n and 4m with common factor 4.
        out = []
        budget = _l_max(Fraction(-1))
        for n in range(1, budget + 1):
            base = catalog.lookup("K", n)
            out.extend(_extend_base(base, budget - n))
        return _sorted_configs(out)
    if index == 3:
        out = []
        for case, families in _INDEX3_CASES:
            out.extend(_case_candidates(case, families))
        return tuple(out)
    raise ValueError(f"index must be 1, 2 or 3, got {index}")


def _case_candidates(case: int, families) -> tuple[Configuration, ...]:
    out = []
    # Case-4 generation screens coprimality against the index-three member
    # only at the primes 2 and 3; overlaps at larger primes stay in the
    # candidate table and fall to the arithmetic or diagonalization filters.
    base_rule = _coprime_away_from_6 if case == 4 else _coprime
    for species, ns in families:
        if ns is None:
            probe = {"A(1,1)": 3, "A(1,2)": 2, "A(2,2)": 2, "D(1)": 5, "D(2)": 5}[species]
            dp = catalog.lookup(species, probe).dp_square
            lmax = _l_max(dp)
            start = probe
            step = 2 if species.startswith("D") else 1
            ns = range(start, lmax + 1, step)
        for n in ns:
            base = catalog.lookup(species, n)
            lmax = _l_max(base.dp_square)
            if base.curve_count > lmax:
                continue
            out.extend(_extend_base(base, lmax - base.curve_count, base_rule))
    return _sorted_configs(out)


def index3_case(config: Configuration) -> int:
    """Which of the six index-three case families a candidate belongs to."""
    base = config.members[0]
    for case, families in _INDEX3_CASES:
        if any(base.species == sp for sp, _ in families):
            return case
    raise ValueError(f"{config.name} has no index-three member")


def enumerate_index3_case(case: int) -> tuple[Configuration, ...]:
    return tuple(c for c in enumerate_candidates(3) if index3_case(c) == case)


# --------------------------------------------------------------------------
# Filters
# --------------------------------------------------------------------------

def cyclic_h1_filter(config: Configuration) -> ObstructionVerdict:
    """H_1 of the boundary must be cyclic: every link's H_1 cyclic and the
    orders pairwise coprime."""
    name = "cyclic_h1"
    non_cyclic = [t.name for t in config.members if not t.h1_link.is_cyclic]
    if non_cyclic:
        return ObstructionVerdict(
            name, Outcome.OBSTRUCTED,
            {"non_cyclic": non_cyclic,
             "h1": {t.name: str(t.h1_link) for t in config.members
                    if not t.h1_link.is_cyclic}},
            note="link homology is not cyclic",
        )
    members = config.members
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            g = math.gcd(a.det_r, b.det_r)
            if g != 1:
                return ObstructionVerdict(
                    name, Outcome.OBSTRUCTED,
                    {"non_coprime": [a.name, b.name], "gcd": g},
                    note=f"|H1| of {a.name} and {b.name} share the factor {g}",
                )
    return ObstructionVerdict(name, Outcome.PASS, {"h1_product": config.h1_product})


def arithmetic_filter(config: Configuration) -> ObstructionVerdict:
    """K^2 times the product of link homology orders must be a nonzero
    perfect square."""
    name = "arithmetic"
    d = config.D
    evidence = {"K2": str(config.K2), "D": str(d)}
    if d <= 0:
        return ObstructionVerdict(name, Outcome.OBSTRUCTED, evidence,
                                  note="D is not positive")
    if d.denominator != 1:
        return ObstructionVerdict(name, Outcome.OBSTRUCTED, evidence,
                                  note="D is not an integer")
    value = int(d)
    evidence["factorization"] = exact.factor_string(value)
    if not exact.is_perfect_square(value):
        return ObstructionVerdict(name, Outcome.OBSTRUCTED, evidence,
                                  note=f"D = {evidence['factorization']} is not a square")
    evidence["sqrt"] = math.isqrt(value)
    return ObstructionVerdict(name, Outcome.PASS, evidence)


def bmy_filter(config: Configuration,
               anti_ample_impossible: bool | None) -> ObstructionVerdict:
    """Orbifold Bogomolov-Miyaoka-Yau test, K^2 <= 3 e_orb.

    Only applies when the canonical class is known to be ample, i.e. when
    K^2 > 0 and imported classification data rules out an anti-ample
    canonical class.  Pass ``None`` when no such data exists for the index.
    """
    name = "bmy"
    if anti_ample_impossible is None:
        return ObstructionVerdict(
            name, Outcome.NOT_APPLICABLE, {},
            note="no imported data constrains the sign of the canonical class")
    if not anti_ample_impossible:
        return ObstructionVerdict(
            name, Outcome.PASS, {"anti_ample_possible": True},
            note="an anti-ample canonical class is not excluded")
    e_orb = config.e_orb
    if e_orb is None:
        return ObstructionVerdict(
            name, Outcome.NOT_APPLICABLE, {},
            note="orbifold Euler characteristic unavailable")
    evidence = {"K2": str(config.K2), "three_e_orb": str(3 * e_orb)}
    if config.K2 > 3 * e_orb:
        return ObstructionVerdict(
            name, Outcome.OBSTRUCTED, evidence,
            note=f"K^2 = {config.K2} exceeds 3 e_orb = {3 * e_orb} with K ample")
    return ObstructionVerdict(name, Outcome.PASS, evidence)


def _anti_ample_impossible(config: Configuration, index: int) -> bool | None:
    if index != 2:
        return None
    an18 = {Configuration.of(ms).key() for ms in catalog.LOG_DEL_PEZZO_INDEX2_18}
    return config.key() not in an18


_DONALDSON_CACHE: dict = {}


def _donaldson(config: Configuration, budget: int) -> ObstructionVerdict:
    key = config.key()
    hit = _DONALDSON_CACHE.get(key)
    if hit is None:
        hit = lattice.donaldson_obstruction(config, budget=budget)
        _DONALDSON_CACHE[key] = hit
    return hit


def _linking(config: Configuration, cyclic_ok: bool) -> ObstructionVerdict:
    if not cyclic_ok:
        return ObstructionVerdict(
            "linking_form", Outcome.NOT_APPLICABLE, {},
            note="boundary homology is not cyclic; test precondition fails")
    return linking.linking_obstruction(config)


# --------------------------------------------------------------------------
# Classification
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CandidateReport:
    config: Configuration
    verdicts: tuple[ObstructionVerdict, ...]
    case: int | None = None

    @property
    def survived(self) -> bool:
        return not any(v.obstructed for v in self.verdicts)

    def verdict(self, filter_name: str) -> ObstructionVerdict:
        return next(v for v in self.verdicts if v.filter == filter_name)


@dataclass(frozen=True)
class ClassificationReport:
    index: int
    candidates: tuple[CandidateReport, ...]
    realizable: tuple[Configuration, ...]

    @property
    def survivors(self) -> tuple[CandidateReport, ...]:
        return tuple(r for r in self.candidates if r.survived)

    def is_realizable(self, config: Configuration) -> bool:
        keys = {c.key() for c in self.realizable}
        return config.key() in keys

    @property
    def unmarked_survivors(self) -> tuple[Configuration, ...]:
        """Survivors with no imported realization: open cases."""
        return tuple(r.config for r in self.survivors if not self.is_realizable(r.config))

    @property
    def cross_checks(self) -> dict:
        survivor_keys = {r.config.key() for r in self.survivors}
        missing = [c.name for c in self.realizable if c.key() not in survivor_keys]
        return {
            "every_realizable_type_survives": not missing,
            "missing_realizable": missing,
            "survivors": [r.config.name for r in self.survivors],
            "unmarked_survivors": [c.name for c in self.unmarked_survivors],
        }


_REALIZABLE = {
    1: catalog.REALIZABLE_INDEX1_7,
    2: catalog.REALIZABLE_INDEX2_4,
    3: catalog.REALIZABLE_INDEX3_16,
}


def screen(config: Configuration, index: int,
           budget: int = lattice.DEFAULT_BUDGET) -> tuple[ObstructionVerdict, ...]:
    """Run the full ordered filter chain on one configuration."""
    v_cyclic = cyclic_h1_filter(config)
    verdicts = [
        v_cyclic,
        arithmetic_filter(config),
        bmy_filter(config, _anti_ample_impossible(config, index)),
        _donaldson(config, budget),
        _linking(config, cyclic_ok=not v_cyclic.obstructed),
        floer.spin_sum_obstruction(config),
    ]
    assert tuple(v.filter for v in verdicts) == FILTER_ORDER
    return tuple(verdicts)


def classify(index: int, budget: int = lattice.DEFAULT_BUDGET) -> ClassificationReport:
    """Screen every candidate of the given index and assemble the report."""
    reports = []
    for config in enumerate_candidates(index):
        verdicts = screen(config, index, budget)
        case = index3_case(config) if index == 3 else None
        reports.append(CandidateReport(config, verdicts, case))
    realizable = tuple(Configuration.of(ms) for ms in _REALIZABLE[index])
    return ClassificationReport(index, tuple(reports), realizable)


# --------------------------------------------------------------------------
# Evidence replay
# --------------------------------------------------------------------------

def replay_verdict(config: Configuration, verdict: ObstructionVerdict) -> bool:
    """Re-check a verdict's evidence without re-running any search."""
    ev = verdict.evidence
    out = verdict.outcome
    if verdict.filter == "cyclic_h1":
        if out is Outcome.PASS:
            return config.dets_pairwise_coprime() and all(
                t.h1_link.is_cyclic for t in config.members)
        if "non_cyclic" in ev:
            return any(t.name in ev["non_cyclic"] and not t.h1_link.is_cyclic
                       for t in config.members)
        a, b = ev["non_coprime"]
        dets = {t.name: t.det_r for t in config.members}
        return math.gcd(dets[a], dets[b]) == ev["gcd"] != 1
    if verdict.filter == "arithmetic":
        d = Fraction(ev["D"])
        if d != config.D:
            return False
        is_square = d > 0 and d.denominator == 1 and exact.is_perfect_square(int(d))
        return is_square == (out is Outcome.PASS)
    if verdict.filter == "bmy":
        if out is Outcome.OBSTRUCTED:
            return Fraction(ev["K2"]) == config.K2 and config.K2 > Fraction(ev["three_e_orb"])
        return True
    if verdict.filter == "donaldson":
        if out is Outcome.NOT_APPLICABLE:
            return True
        chains = [tuple(c) for c in ev["chains"]]
        if chains != [lattice.plumbing_for_reversed_link(t) for t in config.members]:
            return False
        rank = ev["ambient_rank"]
        target = ev["target_square"]
        if target != -config.h1_product:
            return False
        squares = []
        for orbit in ev["orbits"]:
            emb = lattice.PlumbingEmbedding(
                tuple(tuple(v) for v in orbit["vectors"]), rank)
            expected = _gram_of_chains(chains)
            k = len(expected)
            if any(emb.gram_entry(i, j) != expected[i][j]
                   for i in range(k) for j in range(k)):
                return False
            wit = lattice.complement_witness(emb)
            if wit.square != orbit["square"]:
                return False
            squares.append(wit.square)
        if out is Outcome.PASS:
            return squares[ev["witness_orbit"]] == target
        return target not in squares
    if verdict.filter == "linking_form":
        if out is Outcome.NOT_APPLICABLE:
            return True
        forms = [linking.reversed_link_form(t) for t in config.members]
        composed = linking.connected_sum_form(forms)
        if str(composed) != ev["composed"] and not composed.is_trivial:
            return False
        if composed.is_trivial:
            return out is Outcome.PASS
        residue = (-composed.value) % composed.order
        if residue != ev["residue"] or composed.order != ev["modulus"]:
            return False
        hit = exact.is_square_unit_mod(residue, composed.order)
        return hit == (out is Outcome.PASS)
    if verdict.filter == "spin_sum":
        if out is Outcome.NOT_APPLICABLE:
            return True
        sets = []
        for name, values in ev["per_member"]:
            member = next(t for t in config.members if t.name == name)
            recomputed = sorted(floer.spin_d_invariants(member))
            if [str(v) for v in recomputed] != values:
                return False
            sets.append(recomputed)
        from itertools import product as iproduct
        sums = sorted({sum(c, Fraction(0)) for c in iproduct(*sets)})
        if [str(s) for s in sums] != ev["sums"]:
            return False
        return (Fraction(ev["target"]) in sums) == (out is Outcome.PASS)
    raise ValueError(f"unknown filter {verdict.filter!r}")


def _gram_of_chains(chains) -> list[list[int]]:
    verts = [(ci, pi, w) for ci, ch in enumerate(chains) for pi, w in enumerate(ch)]
    k = len(verts)
    gram = [[0] * k for _ in range(k)]
    for i, (ci, pi, w) in enumerate(verts):
        gram[i][i] = w
        for j, (cj, pj, _) in enumerate(verts):
            if i != j and ci == cj and abs(pi - pj) == 1:
                gram[i][j] = 1
    return gram
