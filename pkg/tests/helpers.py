"""Brute-force oracles and generators shared by the test modules.

Everything here recomputes from first principles (subset enumeration,
Fraction Gaussian elimination, permutation search) so library results can
be checked against an independent implementation.
"""

import itertools
from fractions import Fraction

from vcmkit import Shape, SimplicialComplex, Vertex, verify_shelling


def cx(entries, *facets):
    """Build a complex from shape entries and facets given as (i, j) tuples."""
    shape = Shape(tuple(entries))
    return SimplicialComplex.from_facets(
        shape, [[Vertex(*v) for v in facet] for facet in facets])


def faces_bruteforce(delta):
    """Every face as a frozenset of vertices, by direct subset enumeration."""
    out = set()
    for facet in delta.facets:
        vs = sorted(facet)
        for k in range(len(vs) + 1):
            for combo in itertools.combinations(vs, k):
                out.add(frozenset(combo))
    return out


def maximal_sets(sets):
    return {s for s in sets if not any(s < t for t in sets)}


def link_bruteforce(delta, sigma):
    """Facets of the link as a set of frozensets."""
    sigma = frozenset(sigma)
    faces = faces_bruteforce(delta)
    return maximal_sets({f - sigma for f in faces if sigma <= f})


def restriction_bruteforce(delta, window):
    window = frozenset(window)
    faces = faces_bruteforce(delta)
    return maximal_sets({f & window for f in faces})


def minimal_nonfaces_bruteforce(delta):
    """Minimal non-faces over the full vertex set of the shape."""
    vertices = delta.shape.vertices()
    faces = faces_bruteforce(delta)
    nonfaces = []
    for k in range(len(vertices) + 1):
        for combo in itertools.combinations(vertices, k):
            s = frozenset(combo)
            if s in faces:
                continue
            if any(g <= s for g in nonfaces):
                continue
            nonfaces.append(s)
    return set(nonfaces)


def euler_characteristic_reduced(delta):
    """Sum of (-1)^dim over all faces including the empty one."""
    total = 0
    for face in faces_bruteforce(delta):
        total += (-1) ** (len(face) - 1)
    return total


def exponent_vectors(ideal):
    """Generators of a squarefree ideal as 0/1 exponent tuples."""
    n = ideal.shape.num_vertices
    if ideal.is_unit:
        return [(0,) * n]
    return [tuple(m >> i & 1 for i in range(n)) for m in ideal.generator_masks]


def fraction_rank(rows):
    """Rank by textbook Gaussian elimination over Fractions."""
    work = [[Fraction(e) for e in row] for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        for i in range(len(work)):
            if i != rank and work[i][col]:
                f = work[i][col] / prow[col]
                work[i] = [a - f * b for a, b in zip(work[i], prow)]
        rank += 1
    return rank


def gf_rank_naive(rows, p):
    """Rank over GF(p) by full reduction, written independently of the library."""
    work = [[e % p for e in row] for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = pow(work[rank][col], -1, p)
        work[rank] = [e * inv % p for e in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col]:
                f = work[i][col]
                work[i] = [(a - f * b) % p for a, b in zip(work[i], work[rank])]
        rank += 1
    return rank


def antichains_nonvoid(num_vertices):
    """All antichains of nonempty subsets of the vertex positions, as mask tuples.

    These are exactly the facet lists of the complexes on the given vertices
    other than the void complex and {emptyset}.
    """
    subsets = list(range(1, 1 << num_vertices))
    found = []
    chosen = []

    def extend(start):
        for idx in range(start, len(subsets)):
            m = subsets[idx]
            if any((m & c) in (m, c) for c in chosen):
                continue
            chosen.append(m)
            found.append(tuple(chosen))
            extend(idx + 1)
            chosen.pop()

    extend(0)
    return found


def random_complex(shape, rng, max_facets=5):
    """Random complex from random candidate faces (absorbed on construction)."""
    n = shape.num_vertices
    masks = []
    for _ in range(rng.randint(1, max_facets)):
        size = rng.randint(0, n)
        masks.append(sum(1 << p for p in rng.sample(range(n), size)))
    return SimplicialComplex(shape, tuple(masks))


def random_balanced(shape, rng):
    """Random nonempty set of balanced facets (always pure and balanced)."""
    grid = shape.balanced_masks()
    return SimplicialComplex(shape, tuple(rng.sample(grid, rng.randint(1, len(grid)))))


def find_shelling(delta):
    """First facet permutation passing the shelling check, or None."""
    for perm in itertools.permutations(delta.facets):
        if verify_shelling(delta, perm).ok:
            return perm
    return None
