"""The relation space W_{k,k} and its quotient by the coboundary line."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .linalg import KMatrix, SubspaceBasis, Vector, kernel, solve_coordinates
from .polyspace import coboundary_vector, parse_word, word_matrix
from .quadfield import Field

# Relation words cutting out W_{k,k}; each must annihilate P under the right slash.
RELATION_WORDS: dict[int, tuple[str, ...]] = {
    1: ("I + S", "I - L", "I + U + U^2", "I + Tw*S*L + (Tw*S*L)^2"),
    3: ("I + S", "I - L", "I + U + U^2", "I + Tw*S*L + (Tw*S*L)^2"),
    2: ("I + S", "I + U + U^2", "I + S*Tw + Tw*S + Tw^-1*S*Tw*S"),
    7: ("I + S", "I + U + U^2", "T + S*Tw + Tw*S*T + S*Tw^-1*S*Tw"),
    11: (
        "I + S",
        "I + U + U^2",
        "T + S*Tw + T*E + S*Tw*E^-1 + Tw*S*T + S*Tw^-1*S*Tw",
    ),
}


@dataclass(frozen=True)
class RelationSystem:
    field: Field
    k: int
    words: tuple[str, ...]
    blocks: tuple[KMatrix, ...]

    @property
    def stacked_map(self) -> KMatrix:
        """V_{k,k} -> V_{k,k}^r, one block of rows per relation word."""
        return KMatrix.vstack(self.blocks)


def build_relations(field: Field, k: int, words: Sequence[str] | None = None) -> RelationSystem:
    if k < 0:
        raise ValueError("k must be non-negative")
    words = tuple(RELATION_WORDS[field.d] if words is None else words)
    blocks = tuple(word_matrix(field, parse_word(w), k) for w in words)
    return RelationSystem(field, k, words, blocks)


def quotient_basis(
    field: Field, vectors: Sequence[Vector], line: Vector
) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
    """Extend ``line`` to a basis of span(vectors) and drop it.

    Returns the complement representatives and, for each input vector, its
    coordinates in that complement (the ``line`` coordinate discarded).
    """
    if all(v.is_zero() for v in line):
        chosen: list[Vector] = []
        for v in vectors:
            if KMatrix.from_rows(field, [list(w) for w in chosen + [v]]).rank() > len(chosen):
                chosen.append(v)
        coords = tuple(solve_coordinates(field, chosen, v) for v in vectors)
        return tuple(chosen), coords
    chosen = [line]
    for v in vectors:
        if KMatrix.from_rows(field, [list(w) for w in chosen + [v]]).rank() > len(chosen):
            chosen.append(v)
    rest = tuple(chosen[1:])
    coords = tuple(solve_coordinates(field, chosen, v)[1:] for v in vectors)
    return rest, coords


@lru_cache(maxsize=None)
def wkk_basis(field: Field, k: int) -> SubspaceBasis:
    """Basis of W_{k,k} in monomial coordinates, with the quotient by the coboundary."""
    system = build_relations(field, k)
    w = kernel(system.stacked_map)
    cob = coboundary_vector(field, k)
    inside = w.contains(cob, field)
    if inside:
        rest, _ = quotient_basis(field, w.vectors, cob)
    else:
        rest = w.vectors
    return SubspaceBasis(w.ambient_dim, w.vectors, inside, rest)
