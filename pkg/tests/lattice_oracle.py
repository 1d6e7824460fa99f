"""Independent brute-force oracle for embedding-orbit enumeration.

Enumerates every Gram-respecting vector assignment directly (no pruning, no
partial-orbit identification) and partitions the results into orbits by
applying the whole signed-permutation group, using an orbit-minimum
canonical form unrelated to the production one.
"""

import itertools

from qhpp import lattice


def signed_permutations(rank):
    for perm in itertools.permutations(range(rank)):
        for signs in itertools.product((1, -1), repeat=rank):
            yield perm, signs


def act(group_element, assignment):
    perm, signs = group_element
    return tuple(tuple(signs[c] * row[perm[c]] for c in range(len(signs)))
                 for row in assignment)


def orbit_min(assignment, rank):
    return min(act(g, assignment) for g in signed_permutations(rank))


def brute_force_orbits(chains, rank):
    verts = [(ci, pi, w) for ci, ch in enumerate(chains) for pi, w in enumerate(ch)]

    def required(a, b):
        return -1 if (a[0] == b[0] and abs(a[1] - b[1]) == 1) else 0

    pools = {}
    for _, _, w in verts:
        if -w not in pools:
            pools[-w] = [tuple(v) for v in lattice.vectors_of_norm(-w, rank)]

    complete = []

    def place(assignment):
        k = len(assignment)
        if k == len(verts):
            complete.append(tuple(assignment))
            return
        for vec in pools[-verts[k][2]]:
            if all(sum(x * y for x, y in zip(vec, assignment[j]))
                   == required(verts[k][:2], verts[j][:2]) for j in range(k)):
                place(assignment + [vec])

    place([])
    return {orbit_min(a, rank) for a in complete}
