"""Alphabets, text form, canonicalization and corner edges of geometric squares."""

from __future__ import annotations

import itertools
import re
from functools import lru_cache

from bmrel.errors import AmbientMismatchError, ParseError
from bmrel.models import Axis, BMRelation, GeometricSquare, Letter, LinkEdge, SquareQuad

_LETTER_RE = re.compile(r"^([aAbB])([1-9][0-9]*)$")


def horizontal_letters(alpha: int) -> list[Letter]:
    """A_alpha^{+-1} in letter order."""
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    return [Letter.from_code(Axis.HORIZONTAL, c) for c in range(2 * alpha)]


def vertical_letters(beta: int) -> list[Letter]:
    """B_beta^{+-1} in letter order."""
    if beta < 1:
        raise ValueError(f"beta must be >= 1, got {beta}")
    return [Letter.from_code(Axis.VERTICAL, c) for c in range(2 * beta)]


def parse_letter(token: str) -> Letter:
    """Parse ``a3`` / ``A3`` / ``b1`` / ``B1`` (uppercase is the inverse)."""
    m = _LETTER_RE.match(token)
    if m is None:
        raise ParseError(f"invalid letter {token!r}")
    name, index = m.groups()
    axis = Axis.HORIZONTAL if name in "aA" else Axis.VERTICAL
    return Letter(axis, int(index), name.isupper())


def parse_quad(text: str) -> SquareQuad:
    """Parse a four-letter square such as ``"a1 b1 A1 B1"``."""
    tokens = text.split()
    if len(tokens) != 4:
        raise ParseError(f"a square has 4 letters, got {len(tokens)} in {text!r}")
    letters = [parse_letter(t) for t in tokens]
    try:
        return SquareQuad(*letters)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_square(text: str) -> GeometricSquare:
    return canonicalize(parse_quad(text))


def check_ambient(square: GeometricSquare, alpha: int, beta: int) -> None:
    if square.max_horizontal > alpha or square.max_vertical > beta:
        raise AmbientMismatchError(f"square {square} is not in GS_({alpha},{beta})")


@lru_cache(maxsize=None)
def canonicalize(quad: SquareQuad) -> GeometricSquare:
    """Return the geometric square [quad]: the least member of its orbit."""
    return GeometricSquare(min(quad.orbit(), key=lambda q: q.sort_key))


def representatives(square: GeometricSquare) -> frozenset[SquareQuad]:
    """All distinct oriented squares identified by ``square`` (2 or 4 of them)."""
    return frozenset(square.canonical.orbit())


def all_squares(alpha: int, beta: int) -> tuple[GeometricSquare, ...]:
    """GS_{alpha,beta} in canonical order, each class exactly once."""
    hs = horizontal_letters(alpha)
    vs = vertical_letters(beta)
    found = {
        canonicalize(SquareQuad(a, b, a2, b2))
        for a, b, a2, b2 in itertools.product(hs, vs, hs, vs)
    }
    return tuple(sorted(found, key=lambda s: s.sort_key))


def corner_edges_of_quad(quad: SquareQuad) -> tuple[LinkEdge, LinkEdge, LinkEdge, LinkEdge]:
    a, b, a2, b2 = quad.letters()
    return (
        LinkEdge(a.inverse(), b),
        LinkEdge(a2, b.inverse()),
        LinkEdge(a2.inverse(), b2),
        LinkEdge(a, b2.inverse()),
    )


def corner_edges(square: GeometricSquare) -> tuple[LinkEdge, ...]:
    """The four corner edges as a sorted multiset; [abab] yields two edges twice each."""
    return tuple(sorted(corner_edges_of_quad(square.canonical)))


def has_distinct_corners(square: GeometricSquare) -> bool:
    return len(set(corner_edges_of_quad(square.canonical))) == 4


def _swap_axis(letter: Letter) -> Letter:
    other = Axis.VERTICAL if letter.is_horizontal else Axis.HORIZONTAL
    return Letter(other, letter.index, letter.inverted)


def transpose_square(square: GeometricSquare) -> GeometricSquare:
    """Exchange the roles of A and B: [a b a' b'] becomes [b a' b' a] with axes swapped.

    Corner edges are carried to corner edges, so this maps R_{alpha,beta}
    onto R_{beta,alpha}.
    """
    a, b, a2, b2 = square.canonical.letters()
    return canonicalize(SquareQuad(_swap_axis(b), _swap_axis(a2), _swap_axis(b2), _swap_axis(a)))


def transpose_relation(relation: BMRelation) -> BMRelation:
    """The (beta, alpha) relation obtained by transposing every square."""
    return BMRelation.of(
        relation.beta, relation.alpha, (transpose_square(s) for s in relation.squares)
    )
