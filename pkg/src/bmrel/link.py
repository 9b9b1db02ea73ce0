"""Link graphs and the K_{2alpha,2beta} link condition."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum, auto
from typing import Any

from bmrel.errors import AmbientMismatchError, StructuralCorruptionError
from bmrel.models import BMRelation, GeometricSquare, Letter, LinkEdge
from bmrel.squares import check_ambient, corner_edges, horizontal_letters, vertical_letters


@dataclass(frozen=True)
class LinkGraph:
    """Edge multiset of Lk(S) on the vertex set A_alpha^{+-1} and B_beta^{+-1}.

    Attributes:
        alpha: Number of horizontal generators.
        beta: Number of vertical generators.
        edges: All corner edges, sorted, duplicates kept.
    """

    alpha: int
    beta: int
    edges: tuple[LinkEdge, ...] = ()

    def multiplicities(self) -> Counter[LinkEdge]:
        return Counter(self.edges)

    def is_complete_bipartite(self) -> bool:
        """True iff every cross pair occurs exactly once."""
        counts = self.multiplicities()
        return len(self.edges) == 4 * self.alpha * self.beta and all(
            counts[e] == 1 for e in cross_pairs(self.alpha, self.beta)
        )

    def to_networkx(self) -> Any:
        """Export as a ``networkx.MultiGraph`` (requires the ``viz`` extra)."""
        try:
            import networkx as nx
        except ImportError as exc:
            raise ImportError(
                "Graph export requires networkx. Install with: pip install 'bmrel[viz]'"
            ) from exc

        graph = nx.MultiGraph()
        graph.add_nodes_from((str(x) for x in horizontal_letters(self.alpha)), bipartite=0)
        graph.add_nodes_from((str(y) for y in vertical_letters(self.beta)), bipartite=1)
        graph.add_edges_from((str(e.h), str(e.v)) for e in self.edges)
        return graph


class ViolationKind(Enum):
    CARDINALITY = auto()
    AMBIENT = auto()
    UNCOVERED = auto()
    MULTIPLE = auto()


@dataclass(frozen=True)
class LinkViolation:
    """First reason a square set fails the link condition."""

    kind: ViolationKind
    detail: str
    pair: LinkEdge | None = None
    multiplicity: int = 0

    def __str__(self) -> str:
        return f"{self.kind.name.lower()}: {self.detail}"


def cross_pairs(alpha: int, beta: int) -> list[LinkEdge]:
    """All 4*alpha*beta edges of K_{2alpha,2beta}, in pair-index order."""
    return [LinkEdge(h, v) for h in horizontal_letters(alpha) for v in vertical_letters(beta)]


def link(squares: Iterable[GeometricSquare], alpha: int, beta: int) -> LinkGraph:
    """Lk(S): the multiset union of the corner edges of ``squares``."""
    edges: list[LinkEdge] = []
    for s in squares:
        check_ambient(s, alpha, beta)
        edges.extend(corner_edges(s))
    return LinkGraph(alpha, beta, tuple(sorted(edges)))


def diagnose_relation(
    squares: Iterable[GeometricSquare], alpha: int, beta: int
) -> LinkViolation | None:
    """Return the first violated condition, or None for a valid BM relation.

    Pairs are scanned in pair-index order, so the reported pair is the
    least uncovered or multiply covered one.
    """
    square_set = set(squares)
    if len(square_set) != alpha * beta:
        return LinkViolation(
            ViolationKind.CARDINALITY,
            f"expected {alpha * beta} squares, got {len(square_set)}",
        )
    try:
        graph = link(square_set, alpha, beta)
    except AmbientMismatchError as exc:
        return LinkViolation(ViolationKind.AMBIENT, str(exc))

    counts = graph.multiplicities()
    for pair in cross_pairs(alpha, beta):
        n = counts[pair]
        if n == 0:
            return LinkViolation(ViolationKind.UNCOVERED, f"pair {pair} is uncovered", pair, 0)
        if n > 1:
            return LinkViolation(
                ViolationKind.MULTIPLE, f"pair {pair} is covered {n} times", pair, n
            )
    return None


def validate_relation(squares: Iterable[GeometricSquare], alpha: int, beta: int) -> bool:
    """True iff ``squares`` is an (alpha, beta)-BM relation."""
    return diagnose_relation(squares, alpha, beta) is None


def lookup_square(
    relation: BMRelation, a: Letter, b: Letter
) -> tuple[GeometricSquare, Letter, Letter]:
    """Find the unique [a b a' b'] in ``relation`` and return (square, a', b').

    Raises:
        StructuralCorruptionError: if no square or several squares match.
    """
    if not a.is_horizontal or b.is_horizontal:
        raise ValueError(f"lookup needs a horizontal and a vertical letter, got {a}, {b}")

    matches = [
        (square, quad.a2, quad.b2)
        for square in relation.squares
        for quad in set(square.canonical.orbit())
        if quad.a == a and quad.b == b
    ]
    if len(matches) != 1:
        raise StructuralCorruptionError(
            f"expected exactly one square starting {a} {b}, found {len(matches)}"
        )
    return matches[0]
