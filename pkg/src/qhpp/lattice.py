"""Embeddings of negative definite linear plumbings into diagonal lattices.

The ambient lattice is -Z^N with pairing <e_i, e_j> = -delta_ij; its
automorphisms are the signed permutations of the basis.  An embedding assigns
one ambient vector to each vertex of a disjoint union of linear plumbing
graphs so that self-pairings match the vertex weights, adjacent vertices pair
to +1 and all other pairs to 0.  Embeddings are counted as based objects
(one vector per vertex); two are identified only when a single signed
permutation carries one vertex-indexed assignment to the other.

The enumerator backtracks over vertices in order of decreasing weight
magnitude, pruning partial assignments up to signed permutation at every
level, so the search tree stays proportional to the number of partial
orbits.  An explicit extension budget turns runaway searches into a
ResourceBudgetExceeded error instead of a silent truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .catalog import LensLink, SingularityType
from .configuration import Configuration, ObstructionVerdict, Outcome
from .exact import hj_expand

__all__ = [
    "ResourceBudgetExceeded",
    "DEFAULT_BUDGET",
    "MAX_WEIGHT_MAGNITUDE",
    "PlumbingEmbedding",
    "ComplementWitness",
    "plumbing_for_reversed_link",
    "canonical_form",
    "vectors_of_norm",
    "enumerate_embeddings",
    "complement_witness",
    "donaldson_obstruction",
]

DEFAULT_BUDGET = 10_000_000
MAX_WEIGHT_MAGNITUDE = 16


class ResourceBudgetExceeded(RuntimeError):
    """The embedding search exceeded its extension budget."""


@dataclass(frozen=True)
class PlumbingEmbedding:
    """One orbit representative: rows are vertex vectors in input order."""
    vectors: tuple[tuple[int, ...], ...]
    ambient_rank: int

    def gram_entry(self, i: int, j: int) -> int:
        return -sum(a * b for a, b in zip(self.vectors[i], self.vectors[j]))


@dataclass(frozen=True)
class ComplementWitness:
    """Primitive generator of the rank-one orthogonal complement."""
    generator: tuple[int, ...]
    square: int


def plumbing_for_reversed_link(t: SingularityType) -> tuple[int, ...]:
    """Weights of the canonical negative definite filling of the reversed
    link of t: -L(p,q) bounds the linear plumbing on -hj_expand(p, p-q)."""
    if not isinstance(t.link, LensLink):
        raise ValueError(f"the link of {t.name} is not a lens space")
    p, q = t.link.p, t.link.q
    return tuple(-a for a in hj_expand(p, p - q))


def _normalize_chains(lattices) -> list[tuple[int, ...]]:
    chains = []
    for chain in lattices:
        weights = tuple(int(w) for w in chain)
        if not weights:
            raise ValueError("empty plumbing chain")
        if any(w > -2 for w in weights):
            raise ValueError(f"plumbing weights must be <= -2, got {weights}")
        if any(-w > MAX_WEIGHT_MAGNITUDE for w in weights):
            raise ValueError(
                f"weight magnitude exceeds the configured bound {MAX_WEIGHT_MAGNITUDE}")
        chains.append(weights)
    return chains


@lru_cache(maxsize=None)
def vectors_of_norm(norm: int, rank: int) -> np.ndarray:
    """All integer vectors in Z^rank with coordinate squares summing to norm,
    as an (m, rank) int64 array in lexicographic order."""
    out: list[tuple[int, ...]] = []

    def extend(prefix: tuple[int, ...], remaining: int, slots: int) -> None:
        if slots == 0:
            if remaining == 0:
                out.append(prefix)
            return
        bound = math.isqrt(remaining)
        for value in range(-bound, bound + 1):
            extend(prefix + (value,), remaining - value * value, slots - 1)

    extend((), norm, rank)
    return np.array(sorted(out), dtype=np.int64).reshape(len(out), rank)


def canonical_form(rows, rank: int) -> tuple[tuple[int, ...], ...]:
    """Canonical representative of a vertex-indexed assignment under signed
    permutations of the ambient coordinates.

    Each column's sign is fixed by making its first nonzero entry (in row
    order) positive; the sign-normalized columns are then sorted.  Matrices
    related by a signed permutation normalize identically, and the output is
    a total invariant of the orbit.
    """
    nrows = len(rows)
    cols = []
    for c in range(rank):
        col = [rows[r][c] for r in range(nrows)]
        for entry in col:
            if entry > 0:
                break
            if entry < 0:
                col = [-x for x in col]
                break
        cols.append(tuple(col))
    cols.sort(reverse=True)
    return tuple(tuple(cols[c][r] for c in range(rank)) for r in range(nrows))


def enumerate_embeddings(lattices, ambient_rank: int,
                         budget: int = DEFAULT_BUDGET) -> list[PlumbingEmbedding]:
    """All embeddings of the given linear plumbings into -Z^ambient_rank, one
    representative per signed-permutation orbit, in canonical order.

    An empty result means no embedding exists.  Raises
    ResourceBudgetExceeded if more than ``budget`` candidate extensions are
    examined.
    """
    chains = _normalize_chains(lattices)
    vertex_weights = []
    vertex_ids = []
    for ci, chain in enumerate(chains):
        for pi, w in enumerate(chain):
            vertex_ids.append((ci, pi))
            vertex_weights.append(w)
    total = len(vertex_weights)
    if total > ambient_rank:
        raise ValueError(
            f"{total} vertices cannot embed independently in rank {ambient_rank}")

    # Required pairing of each vertex pair, as ambient dot products:
    # dot(v_i, v_i) = -w_i, dot = -1 for adjacent vertices, 0 otherwise.
    def required_dot(a: tuple[int, int], b: tuple[int, int]) -> int:
        if a[0] == b[0] and abs(a[1] - b[1]) == 1:
            return -1
        return 0

    order = sorted(range(total), key=lambda k: (vertex_weights[k], vertex_ids[k]))

    # Each state is one partial-orbit representative: the tuple of vectors
    # placed so far, in placement order.
    states: list[tuple[tuple[int, ...], ...]] = [()]
    examined = 0
    for level, k in enumerate(order):
        norm = -vertex_weights[k]
        cands = vectors_of_norm(norm, ambient_rank)
        dots = np.array([required_dot(vertex_ids[k], vertex_ids[order[j]])
                         for j in range(level)], dtype=np.int64)
        next_states: dict[tuple, tuple[tuple[int, ...], ...]] = {}
        for placed in states:
            examined += len(cands)
            if examined > budget:
                raise ResourceBudgetExceeded(
                    f"embedding search exceeded budget of {budget} extensions")
            if placed:
                placed_arr = np.array(placed, dtype=np.int64)
                mask = (cands @ placed_arr.T == dots).all(axis=1)
                good = cands[mask]
            else:
                good = cands
            for vec in good:
                assignment = placed + (tuple(int(x) for x in vec),)
                key = canonical_form(assignment, ambient_rank)
                next_states.setdefault(key, assignment)
        states = list(next_states.values())
        if not states:
            return []

    # Restore original vertex order and canonicalize for output.
    inverse = [0] * total
    for pos, k in enumerate(order):
        inverse[k] = pos
    results = {}
    for placed in states:
        rows = tuple(placed[inverse[k]] for k in range(total))
        results[canonical_form(rows, ambient_rank)] = None
    embeddings = [PlumbingEmbedding(rows, ambient_rank) for rows in sorted(results)]
    for emb in embeddings:
        _verify_gram(emb, vertex_ids, vertex_weights, required_dot)
    return embeddings


def _verify_gram(emb: PlumbingEmbedding, vertex_ids, vertex_weights, required_dot) -> None:
    for i in range(len(vertex_weights)):
        for j in range(len(vertex_weights)):
            expected = vertex_weights[i] if i == j else -required_dot(vertex_ids[i], vertex_ids[j])
            if emb.gram_entry(i, j) != expected:
                raise AssertionError("embedding fails its Gram constraints")


def complement_witness(emb: PlumbingEmbedding, ambient_rank: int | None = None) -> ComplementWitness:
    """Primitive generator of the orthogonal complement of a corank-one
    embedding, normalized so its first nonzero coordinate is positive."""
    rank = ambient_rank if ambient_rank is not None else emb.ambient_rank
    rows = [list(map(Fraction, v)) for v in emb.vectors]
    if len(rows) != rank - 1:
        raise ValueError(
            f"complement is not rank one: {len(rows)} vectors in rank {rank}")
    # Fraction-exact row reduction; the kernel of the vector matrix is the
    # orthogonal complement since the ambient form is minus the dot product.
    pivots: list[int] = []
    r = 0
    for c in range(rank):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    if r < len(rows):
        raise ValueError("embedding vectors are linearly dependent")
    free = [c for c in range(rank) if c not in pivots]
    assert len(free) == 1
    sol = [Fraction(0)] * rank
    sol[free[0]] = Fraction(1)
    for i, c in enumerate(pivots):
        sol[c] = -rows[i][free[0]]
    lcm = 1
    for x in sol:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in sol]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    assert all(sum(a * b for a, b in zip(ints, v)) == 0 for v in emb.vectors)
    return ComplementWitness(tuple(ints), -sum(x * x for x in ints))


def donaldson_obstruction(config: Configuration,
                          budget: int = DEFAULT_BUDGET) -> ObstructionVerdict:
    """Diagonalization test for a configuration of lens-space links.

    The canonical fillings of the reversed links must embed into -Z^(n+1)
    with rank-one orthogonal complement of square minus the product of the
    link homology orders.  OBSTRUCTED when no embedding orbit attains that
    square (in particular when no embedding exists at all).
    """
    name = "donaldson"
    non_lens = [t.name for t in config.members if not isinstance(t.link, LensLink)]
    if non_lens:
        return ObstructionVerdict(
            name, Outcome.NOT_APPLICABLE, {"non_lens_members": non_lens},
            note="test applies only to configurations of lens-space links",
        )
    chains = [plumbing_for_reversed_link(t) for t in config.members]
    n = sum(len(c) for c in chains)
    ambient = n + 1
    target = -config.h1_product
    embeddings = enumerate_embeddings(chains, ambient, budget=budget)
    orbits = []
    witness_index = None
    for idx, emb in enumerate(embeddings):
        wit = complement_witness(emb)
        orbits.append({
            "vectors": [list(v) for v in emb.vectors],
            "complement": list(wit.generator),
            "square": wit.square,
        })
        if wit.square == target and witness_index is None:
            witness_index = idx
    evidence = {
        "chains": [list(c) for c in chains],
        "ambient_rank": ambient,
        "target_square": target,
        "orbits": orbits,
    }
    if not embeddings:
        return ObstructionVerdict(
            name, Outcome.OBSTRUCTED, evidence,
            note="the plumbing lattice does not embed at all",
        )
    if witness_index is None:
        squares = sorted(o["square"] for o in orbits)
        return ObstructionVerdict(
            name, Outcome.OBSTRUCTED, evidence,
            note=f"complement squares {squares} never reach {target}",
        )
    evidence["witness_orbit"] = witness_index
    return ObstructionVerdict(name, Outcome.PASS, evidence)
