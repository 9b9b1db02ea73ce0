"""Level-by-level construction of R_{1,beta+1} from R_{1,beta}.

Every (1, beta)-BM relation R yields 3 + 2*beta distinct (1, beta+1)-BM
relations: three by adding one square in the new generator, and 2*beta by
splitting one square of R into two squares through the new generator.
Distinct inputs give disjoint outputs and every (1, beta+1) relation
arises, so |R_{1,beta}| = 3 * 5 * ... * (2*beta + 1).
"""

from __future__ import annotations

import logging
import math
import time
from collections.abc import Iterable
from dataclasses import dataclass
from multiprocessing import Pool

from bmrel.errors import AmbientMismatchError, BudgetExceededError, DisjointnessError
from bmrel.link import validate_relation
from bmrel.models import BMRelation, GeometricSquare, Letter, SquareQuad
from bmrel.squares import canonicalize

logger = logging.getLogger(__name__)

# Levels above this size are not materialized unless explicitly allowed.
DEFAULT_MAX_BETA = 7

SquarePair = frozenset[GeometricSquare]


@dataclass(frozen=True)
class PhiResult:
    """The square pairs that can replace one square of a (1, beta) relation.

    There are two pairs, except for squares a b a b whose corners repeat:
    there v1 ~ v4 and v2 ~ v3, so both pairs are the same and ``pairs``
    holds one. Such squares never occur in a BM relation.
    """

    pairs: frozenset[SquarePair]

    def __post_init__(self) -> None:
        if len(self.pairs) not in (1, 2) or any(len(p) != 2 for p in self.pairs):
            raise ValueError("phi yields one or two pairs of distinct squares")

    @property
    def collapsed(self) -> bool:
        return len(self.pairs) == 1

    def ordered(self) -> list[tuple[GeometricSquare, ...]]:
        """Pairs with their squares sorted, in canonical order."""
        pairs = [tuple(sorted(p, key=lambda s: s.sort_key)) for p in self.pairs]
        return sorted(pairs, key=lambda p: tuple(s.sort_key for s in p))


@dataclass(frozen=True)
class RelationLevel:
    """A complete level R_{1,beta}, in canonical order."""

    beta: int
    relations: tuple[BMRelation, ...]

    def __post_init__(self) -> None:
        for r in self.relations:
            if r.alpha != 1 or r.beta != self.beta:
                raise ValueError(f"relation ambient ({r.alpha},{r.beta}) != (1,{self.beta})")

    @classmethod
    def of(cls, beta: int, relations: Iterable[BMRelation]) -> RelationLevel:
        return cls(beta, tuple(sorted(set(relations), key=lambda r: r.sort_key)))

    def __len__(self) -> int:
        return len(self.relations)

    def validate(self) -> bool:
        """Every member satisfies the link condition for (1, beta)."""
        return all(validate_relation(r.squares, 1, self.beta) for r in self.relations)


def kimberley_count(beta: int) -> int:
    """|R_{1,beta}| = prod_{i=1}^{beta} (2i + 1)."""
    if beta < 1:
        raise ValueError(f"beta must be >= 1, got {beta}")
    return math.prod(range(3, 2 * beta + 2, 2))


def recurrence_counts(from_beta: int, to_beta: int, start: int | None = None) -> dict[int, int]:
    """Level sizes from ``from_beta`` to ``to_beta`` via |R_{1,b+1}| = (3+2b)|R_{1,b}|."""
    if not 1 <= from_beta <= to_beta:
        raise ValueError(f"need 1 <= from_beta <= to_beta, got {from_beta}, {to_beta}")
    counts = {from_beta: kimberley_count(from_beta) if start is None else start}
    for b in range(from_beta, to_beta):
        counts[b + 1] = (3 + 2 * b) * counts[b]
    return counts


def _new_letters(beta: int) -> tuple[Letter, Letter]:
    return Letter.vertical(beta + 1), Letter.vertical(beta + 1, inverted=True)


def phi_quad(quad: SquareQuad, beta: int) -> PhiResult:
    """phi applied to an oriented square a b a' b' of GS_{1,beta}.

    The result depends only on the geometric square of ``quad``.
    """
    for x in quad.letters():
        if x.is_horizontal and x.index != 1:
            raise AmbientMismatchError(f"{quad} is not in GS_(1,{beta})")
        if not x.is_horizontal and x.index > beta:
            raise AmbientMismatchError(f"{quad} mentions b{x.index}, outside GS_(1,{beta})")
    new, new_inv = _new_letters(beta)
    a, b, a2, b2 = quad.letters()
    v1 = canonicalize(SquareQuad(a, new, a2, b2))
    v2 = canonicalize(SquareQuad(a, b, a2, new_inv))
    v3 = canonicalize(SquareQuad(a, new_inv, a2, b2))
    v4 = canonicalize(SquareQuad(a, b, a2, new))
    return PhiResult(frozenset({frozenset({v1, v2}), frozenset({v3, v4})}))


def phi(square: GeometricSquare, beta: int) -> PhiResult:
    return phi_quad(square.canonical, beta)


def _check_level_member(relation: BMRelation) -> None:
    if relation.alpha != 1:
        raise AmbientMismatchError(f"psi needs alpha = 1, got {relation.alpha}")


def psi1(relation: BMRelation) -> list[BMRelation]:
    """R plus one of the three squares in the new generator alone."""
    _check_level_member(relation)
    beta = relation.beta
    new, new_inv = _new_letters(beta)
    a, a_inv = Letter.horizontal(1), Letter.horizontal(1, inverted=True)
    extra = [
        SquareQuad(a, new, a_inv, new_inv),
        SquareQuad(a, new, a, new_inv),
        SquareQuad(a, new, a_inv, new),
    ]
    out = [BMRelation.of(1, beta + 1, (*relation.squares, canonicalize(q))) for q in extra]
    return sorted(out, key=lambda r: r.sort_key)


def psi2(relation: BMRelation) -> list[BMRelation]:
    """Replace each square of R, in turn, by either pair of phi of it."""
    _check_level_member(relation)
    beta = relation.beta
    out: dict[tuple[tuple[int, int, int, int], ...], BMRelation] = {}
    for r in relation.squares:
        rest = [s for s in relation.squares if s != r]
        for pair in phi(r, beta).ordered():
            candidate = BMRelation.of(1, beta + 1, (*rest, *pair))
            out[candidate.sort_key] = candidate
    if len(out) != 2 * beta:
        raise DisjointnessError(f"psi2 produced {len(out)} relations, expected {2 * beta}")
    return [out[k] for k in sorted(out)]


def psi(relation: BMRelation) -> list[BMRelation]:
    """psi1(R) together with psi2(R): exactly 3 + 2*beta relations."""
    first = psi1(relation)
    second = psi2(relation)
    union = {r.sort_key: r for r in (*first, *second)}
    expected = 3 + 2 * relation.beta
    if len(union) != expected:
        raise DisjointnessError(f"psi produced {len(union)} relations, expected {expected}")
    return [union[k] for k in sorted(union)]


def _psi_chunk(relations: list[BMRelation]) -> list[BMRelation]:
    return [t for r in relations for t in psi(r)]


def build_level(
    level: RelationLevel,
    *,
    jobs: int = 1,
    max_beta: int = DEFAULT_MAX_BETA,
) -> RelationLevel:
    """R_{1,beta+1} as the disjoint union of psi over a complete level R_{1,beta}.

    Raises:
        BudgetExceededError: if beta + 1 exceeds ``max_beta``.
        DisjointnessError: if the output is not (3 + 2*beta) times the input.
    """
    target = level.beta + 1
    if target > max_beta:
        raise BudgetExceededError(
            f"refusing to materialize R(1,{target}) ({kimberley_count(target)} relations); "
            f"limit is beta <= {max_beta}, use the count-only recurrence instead"
        )
    start = time.perf_counter()
    if jobs > 1 and len(level) > jobs:
        size = -(-len(level) // jobs)
        chunks = [list(level.relations[i : i + size]) for i in range(0, len(level), size)]
        with Pool(jobs) as pool:
            parts = pool.map(_psi_chunk, chunks)
        produced = [t for part in parts for t in part]
    else:
        produced = _psi_chunk(list(level.relations))

    result = RelationLevel.of(target, produced)
    expected = (3 + 2 * level.beta) * len(level)
    if len(result) != expected or len(produced) != expected:
        raise DisjointnessError(
            f"R(1,{target}) has {len(result)} distinct of {len(produced)} produced relations, "
            f"expected (3+2*{level.beta})*{len(level)} = {expected}"
        )
    logger.info(
        "built R(1,%d) = %d from R(1,%d) = %d in %.2fs",
        target, len(result), level.beta, len(level), time.perf_counter() - start,
    )
    return result


def verify_disjoint_pairwise(level: RelationLevel) -> bool:
    """Full check that psi(R) and psi(T) never meet for distinct R, T in ``level``."""
    images = [frozenset(r.sort_key for r in psi(rel)) for rel in level.relations]
    for i, left in enumerate(images):
        for right in images[i + 1 :]:
            if left & right:
                return False
    return True
