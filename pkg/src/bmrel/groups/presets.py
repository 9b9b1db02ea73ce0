"""Named BM presentations used in examples, tests and certificates."""

from __future__ import annotations

from collections.abc import Iterable
from functools import lru_cache

from bmrel.errors import StructuralCorruptionError
from bmrel.groups.presentation import BMPresentation, presentation_from_relation
from bmrel.groups.words import Word, parse_relator, parse_word
from bmrel.link import diagnose_relation
from bmrel.models import BMRelation, SquareQuad
from bmrel.squares import canonicalize

# (2,2) groups in a, b, c, d = a1, a2, b1, b2 notation.
_PAIR_PRESETS: dict[str, tuple[str, ...]] = {
    "gamma4": ("acac^-1", "adad^-1", "bcbd", "bc^-1bd^-1"),
    "gamma30": ("acad", "ac^-1ad^-1", "bcbd", "bc^-1bd^-1"),
    "gamma5": ("acac^-1", "adad^-1", "bcb^-1c", "bdb^-1d"),
    "gamma10": ("acac^-1", "ada^-1d", "bcbc^-1", "bdb^-1d^-1"),
}

# The three (1,1) groups: Z^2 and two Klein bottle groups.
_SINGLE_PRESETS: dict[str, tuple[str, ...]] = {
    "z2": ("a1 b1 A1 B1",),
    "klein1": ("a1 b1 a1 B1",),
    "klein2": ("a1 b1 A1 b1",),
}

PRESET_NAMES: tuple[str, ...] = tuple(sorted((*_PAIR_PRESETS, *_SINGLE_PRESETS)))


def relation_from_relators(relators: Iterable[Word], alpha: int, beta: int) -> BMRelation:
    """The BM relation whose squares are the given length-4 relators.

    Raises:
        StructuralCorruptionError: if the squares do not form a BM relation.
    """
    squares = []
    for word in relators:
        if len(word) != 4:
            raise StructuralCorruptionError(f"relator of length {len(word)} is not a square")
        squares.append(canonicalize(SquareQuad(*word)))
    violation = diagnose_relation(squares, alpha, beta)
    if violation is not None:
        raise StructuralCorruptionError(f"relators do not form a BM relation: {violation}")
    return BMRelation.of(alpha, beta, squares)


@lru_cache(maxsize=None)
def preset_presentation(name: str) -> BMPresentation:
    """Look up a preset by name (see :data:`PRESET_NAMES`).

    Raises:
        KeyError: for an unknown name.
    """
    if name in _PAIR_PRESETS:
        words = [parse_relator(r) for r in _PAIR_PRESETS[name]]
        return presentation_from_relation(relation_from_relators(words, 2, 2), name)
    if name in _SINGLE_PRESETS:
        words = [parse_word(r) for r in _SINGLE_PRESETS[name]]
        return presentation_from_relation(relation_from_relators(words, 1, 1), name)
    raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
