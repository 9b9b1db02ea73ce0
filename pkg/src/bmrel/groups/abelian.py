"""Abelianization of BM presentations via integer invariant factors.

The abelianization of <A, B | R> is Z^n / (row span of the exponent
matrix), n = alpha + beta.  Invariant factors come from sympy over ZZ;
they are then re-normalized through prime-power decomposition so the
result is a strict divisibility chain regardless of the diagonal form
returned.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import zip_longest
from multiprocessing import Pool

import numpy as np
from sympy import ZZ, Matrix, factorint
from sympy.matrices.normalforms import invariant_factors

from bmrel.groups.presentation import BMPresentation, presentation_from_relation
from bmrel.models import BMRelation

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class AbelianInvariants:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with 1 < d_1 | d_2 | ... | d_k.

    Two finitely generated abelian groups are isomorphic iff these agree.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError(f"free_rank must be >= 0, got {self.free_rank}")
        if any(d < 2 for d in self.torsion):
            raise ValueError(f"torsion coefficients must be >= 2, got {self.torsion}")
        for d1, d2 in zip(self.torsion, self.torsion[1:]):
            if d2 % d1:
                raise ValueError(f"torsion must be a divisibility chain, got {self.torsion}")

    @classmethod
    def from_diagonal(cls, diagonal: Iterable[int]) -> AbelianInvariants:
        """Invariants of the direct sum of Z/d over ``diagonal`` (d = 0 gives Z)."""
        rank = 0
        exponents: dict[int, list[int]] = defaultdict(list)
        for d in diagonal:
            d = abs(int(d))
            if d == 0:
                rank += 1
            elif d > 1:
                for p, e in factorint(d).items():
                    exponents[int(p)].append(int(e))
        # Largest powers of each prime go together into the last factor.
        columns = zip_longest(
            *[[p**e for e in sorted(es, reverse=True)] for p, es in sorted(exponents.items())],
            fillvalue=1,
        )
        factors = sorted(math.prod(c) for c in columns)
        return cls(rank, tuple(factors))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"


def exponent_matrix(presentation: BMPresentation) -> np.ndarray:
    """Relators x generators exponent sums; columns a_1..a_alpha, b_1..b_beta."""
    alpha = presentation.alpha
    relators = presentation.relators()
    matrix = np.zeros((len(relators), alpha + presentation.beta), dtype=np.int64)
    for row, word in enumerate(relators):
        for x in word:
            col = x.index - 1 if x.is_horizontal else alpha + x.index - 1
            matrix[row, col] += -1 if x.inverted else 1
    return matrix


def invariants_of_matrix(matrix: np.ndarray) -> AbelianInvariants:
    """Invariants of Z^cols / rowspan(matrix)."""
    rows, cols = matrix.shape
    if rows == 0 or not matrix.any():
        return AbelianInvariants(cols)
    factors = [int(f) for f in invariant_factors(Matrix(matrix.tolist()), domain=ZZ)]
    # Columns without a factor contribute a free Z.
    diagonal = factors + [0] * (cols - len(factors))
    return AbelianInvariants.from_diagonal(diagonal)


def abelianization(presentation: BMPresentation) -> AbelianInvariants:
    return invariants_of_matrix(exponent_matrix(presentation))


def _relation_invariants(relation: BMRelation) -> AbelianInvariants:
    return abelianization(presentation_from_relation(relation))


@dataclass(frozen=True)
class ClassificationReport:
    """Relations grouped by abelianization, classes and members in canonical order.

    Attributes:
        alpha: Number of horizontal generators.
        beta: Number of vertical generators.
        classes: (invariants, members) pairs sorted by invariants.
    """

    alpha: int
    beta: int
    classes: tuple[tuple[AbelianInvariants, tuple[BMRelation, ...]], ...]

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def total(self) -> int:
        return sum(len(members) for _, members in self.classes)

    def sizes(self) -> list[int]:
        return [len(members) for _, members in self.classes]

    def class_of(self, relation: BMRelation) -> AbelianInvariants | None:
        for invariants, members in self.classes:
            if relation in members:
                return invariants
        return None


def classify_by_abelianization(
    relations: Sequence[BMRelation], *, jobs: int = 1
) -> ClassificationReport:
    """Partition ``relations`` (one common ambient) by abelianization.

    Raises:
        ValueError: if ``relations`` is empty or mixes ambients.
    """
    if not relations:
        raise ValueError("need at least one relation to classify")
    alpha, beta = relations[0].alpha, relations[0].beta
    if any((r.alpha, r.beta) != (alpha, beta) for r in relations):
        raise ValueError("all relations must share one ambient (alpha, beta)")

    if jobs > 1:
        with Pool(jobs) as pool:
            invariants = pool.map(_relation_invariants, relations, chunksize=64)
    else:
        invariants = [_relation_invariants(r) for r in relations]

    grouped: dict[AbelianInvariants, list[BMRelation]] = defaultdict(list)
    for relation, inv in zip(relations, invariants):
        grouped[inv].append(relation)
    classes = tuple(
        (inv, tuple(sorted(grouped[inv], key=lambda r: r.sort_key))) for inv in sorted(grouped)
    )
    logger.info(
        "classified %d (%d,%d) relations into %d abelianization classes",
        len(relations), alpha, beta, len(classes),
    )
    return ClassificationReport(alpha, beta, classes)
