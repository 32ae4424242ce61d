"""Reduced simplicial homology, Hochster's formula, and Cohen-Macaulay tests.

All homology is computed from full downward-closed face sets (not facet
lists): links and vertex-induced restrictions are themselves just filtered
face sets, so a single lru_cache keyed on the face-mask tuple serves the
Reisner link sweep and the Hochster subset sweep alike.  Ranks are exact:
GF(2) uses packed bitmask elimination, odd primes modular elimination, the
rationals Bareiss elimination over the integers.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .complexes import SimplicialComplex, _popcount
from .linalg import CoefficientField, ExactMatrix, gf2_rank, integer_rank, rank_mod_p
from .stanley_reisner import codim_affine


class VertexLimitError(ValueError):
    """The vertex count exceeds the configured bound for a subset sweep."""


def worker_count() -> int:
    """Worker cap for the Hochster sweep, from VCMKIT_THREADS (default 1)."""
    raw = os.environ.get("VCMKIT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def _canon(face_masks) -> tuple:
    return tuple(sorted(face_masks, key=lambda m: (_popcount(m), m)))


def _layers(faces: tuple) -> list:
    """Faces grouped by cardinality: layers[s] lists the masks of size s."""
    top = max(_popcount(m) for m in faces)
    layers = [[] for _ in range(top + 1)]
    for m in faces:
        layers[_popcount(m)].append(m)
    return layers


def _boundary_rank(cols: list, rows: list, characteristic: int) -> int:
    """Rank of the boundary map from the `cols` faces down to the `rows` faces."""
    if not cols or not rows:
        return 0
    index = {m: i for i, m in enumerate(rows)}
    if characteristic == 2:
        packed = []
        for f in cols:
            bits = 0
            sub = f
            while sub:
                low = sub & -sub
                bits |= 1 << index[f ^ low]
                sub ^= low
            packed.append(bits)
        return gf2_rank(packed)
    matrix = [[0] * len(cols) for _ in rows]
    for j, f in enumerate(cols):
        sign = 1
        sub = f
        while sub:
            low = sub & -sub
            matrix[index[f ^ low]][j] = sign
            sign = -sign
            sub ^= low
    if characteristic == 0:
        return integer_rank(matrix)
    return rank_mod_p(matrix, characteristic)


@lru_cache(maxsize=None)
def _ranks_from_faces(faces: tuple, characteristic: int) -> tuple:
    """Reduced homology ranks of a full face set, as ((dim, rank), ...).

    `faces` must be the complete downward-closed collection of face masks
    (including the empty face) in the `_canon` order; the cache key is shared
    by every link and restriction with the same face set.
    """
    if not faces:
        return ()
    layers = _layers(faces)
    top = len(layers) - 1
    branks = [0] * (top + 2)
    for s in range(1, top + 1):
        branks[s] = _boundary_rank(layers[s], layers[s - 1], characteristic)
    return tuple(
        (s - 1, len(layers[s]) - branks[s] - branks[s + 1])
        for s in range(top + 1)
    )


def reduced_homology_ranks(delta: SimplicialComplex, field: CoefficientField) -> dict:
    """Ranks of all reduced homology groups, as {dimension: rank}.

    The void complex has no homology at all and returns {}; the complex
    {emptyset} has a single rank in dimension -1.
    """
    return dict(_ranks_from_faces(_canon(delta.face_masks()), field.characteristic))


def boundary_matrix(delta: SimplicialComplex, d: int, field: CoefficientField) -> ExactMatrix:
    """Matrix of the reduced boundary map from d-faces to (d-1)-faces.

    Rows and columns follow the canonical face order; the allowed range is
    -1 <= d <= dim + 1, covering both zero maps at the ends.
    """
    if delta.is_void:
        raise ValueError("the void complex has no chain groups")
    if not -1 <= d <= delta.dim + 1:
        raise ValueError(f"no boundary map in degree {d} for a {delta.dim}-complex")
    faces = delta.face_masks()
    cols = [m for m in faces if _popcount(m) == d + 1]
    rows = [m for m in faces if _popcount(m) == d]
    index = {m: i for i, m in enumerate(rows)}
    entries = [[0] * len(cols) for _ in rows]
    for j, f in enumerate(cols):
        sign = 1
        sub = f
        while sub:
            low = sub & -sub
            entries[index[f ^ low]][j] = sign
            sign = -sign
            sub ^= low
    return ExactMatrix.from_rows(field, entries, ncols=len(cols))


# -- Hochster's formula ---------------------------------------------------


@dataclass(frozen=True)
class BettiTable:
    """Multigraded Betti numbers beta_{i, sigma} with nonzero multiplicity."""

    entries: dict  # (homological index, Face) -> multiplicity

    @property
    def max_index(self) -> int:
        """Largest homological index present, or None for the zero module."""
        if not self.entries:
            return None
        return max(i for i, _ in self.entries)

    def multiplicity(self, i: int, sigma) -> int:
        return self.entries.get((i, frozenset(sigma)), 0)

    def total(self, i: int) -> int:
        return sum(v for (k, _), v in self.entries.items() if k == i)


def _hochster_range(delta, characteristic, start, stop):
    faces = delta.face_masks()
    found = []
    for sigma in range(start, stop):
        sub = _canon([f for f in faces if f & ~sigma == 0])
        size = _popcount(sigma)
        for d, h in _ranks_from_faces(sub, characteristic):
            if h:
                found.append((size - 1 - d, sigma, h))
    return found


def hochster_betti(delta: SimplicialComplex, field: CoefficientField,
                   max_vertices: int = 20) -> BettiTable:
    """Betti table of the Stanley-Reisner quotient via Hochster's formula.

    beta_{i, sigma} is the rank of the reduced homology of the restriction
    to sigma in dimension |sigma| - i - 1; the sweep walks all vertex
    subsets, so it refuses shapes with more than `max_vertices` vertices.
    """
    n = delta.shape.num_vertices
    if n > max_vertices:
        raise VertexLimitError(
            f"{n} vertices exceed the max_vertices={max_vertices} subset sweep bound")
    if delta.is_void:
        return BettiTable({})
    total = 1 << n
    workers = min(worker_count(), total)
    if workers == 1:
        found = _hochster_range(delta, field.characteristic, 0, total)
    else:
        step = -(-total // workers)
        spans = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(
                lambda span: _hochster_range(delta, field.characteristic, *span), spans)
            found = [item for part in parts for item in part]
    shape = delta.shape
    entries = {}
    for i, sigma, h in found:
        entries[(i, shape.face_from_mask(sigma))] = h
    return BettiTable(entries)


def projective_dimension(delta: SimplicialComplex, field: CoefficientField,
                         max_vertices: int = 20) -> int:
    """Length of the minimal free resolution of the Stanley-Reisner quotient."""
    table = hochster_betti(delta, field, max_vertices=max_vertices)
    if table.max_index is None:
        raise ValueError("the void complex presents the zero module; no projective dimension")
    return table.max_index


# -- Cohen-Macaulay tests -------------------------------------------------


class ReisnerVerdict(NamedTuple):
    is_cm: bool
    witness: tuple  # (Face, homology index) for the first failure, else None


def is_cm_reisner(delta: SimplicialComplex, field: CoefficientField) -> ReisnerVerdict:
    """Reisner's criterion: every link is homology-free below its dimension.

    Faces are visited in canonical order (cardinality, then vertex order)
    and the witness reports the first face whose link has nonvanishing
    reduced homology strictly below its dimension.
    """
    if delta.is_void:
        raise ValueError("Cohen-Macaulayness is undefined for the void complex")
    faces = delta.face_masks()
    characteristic = field.characteristic
    for sigma in faces:
        link_faces = _canon([f & ~sigma for f in faces if f & sigma == sigma])
        ranks = _ranks_from_faces(link_faces, characteristic)
        link_dim = ranks[-1][0]
        for d, h in ranks:
            if d < link_dim and h:
                return ReisnerVerdict(False, (delta.shape.face_from_mask(sigma), d))
    return ReisnerVerdict(True, None)


def is_cm_pdim(delta: SimplicialComplex, field: CoefficientField,
               max_vertices: int = 20) -> bool:
    """Cohen-Macaulay test via Auslander-Buchsbaum: pdim equals affine codim."""
    return projective_dimension(delta, field, max_vertices=max_vertices) == codim_affine(delta)


def has_field_dependent_homology(delta: SimplicialComplex, primes=(2, 3)) -> bool:
    """Flag complexes whose homology ranks differ between Q and small GF(p).

    A disagreement means integral torsion, so field-sensitive answers from
    the CM tests should be expected.
    """
    rational = reduced_homology_ranks(delta, CoefficientField(0))
    for p in primes:
        if reduced_homology_ranks(delta, CoefficientField(p)) != rational:
            return True
    return False
