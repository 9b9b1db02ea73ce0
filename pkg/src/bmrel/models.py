"""Data models: letters, oriented squares, geometric squares, link edges and BM relations."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property

# Ordinal packing: axis in the high bits, (index, inverted) below.
_AXIS_SHIFT = 32


class Axis(IntEnum):
    HORIZONTAL = 0
    VERTICAL = 1


@dataclass(frozen=True, order=True)
class Letter:
    """An oriented edge label a_k, a_k^-1 (horizontal) or b_k, b_k^-1 (vertical).

    The field order gives the total letter order used everywhere:
    horizontal before vertical, then by index, non-inverted first
    (a1 < A1 < a2 < A2 < ... < b1 < B1 < ...).
    """

    axis: Axis
    index: int
    inverted: bool = False

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"index must be >= 1, got {self.index}")

    @classmethod
    def horizontal(cls, index: int, inverted: bool = False) -> Letter:
        return cls(Axis.HORIZONTAL, index, inverted)

    @classmethod
    def vertical(cls, index: int, inverted: bool = False) -> Letter:
        return cls(Axis.VERTICAL, index, inverted)

    @classmethod
    def from_code(cls, axis: Axis, code: int) -> Letter:
        """Inverse of :attr:`code`."""
        return cls(axis, code // 2 + 1, bool(code % 2))

    @property
    def code(self) -> int:
        """Dense position within the axis alphabet: 2*(index-1) + inverted."""
        return 2 * (self.index - 1) + int(self.inverted)

    @property
    def ordinal(self) -> int:
        """Packed integer whose natural order is the letter order."""
        return (int(self.axis) << _AXIS_SHIFT) | self.code

    @property
    def is_horizontal(self) -> bool:
        return self.axis == Axis.HORIZONTAL

    def inverse(self) -> Letter:
        return Letter(self.axis, self.index, not self.inverted)

    def __str__(self) -> str:
        name = "a" if self.axis == Axis.HORIZONTAL else "b"
        if self.inverted:
            name = name.upper()
        return f"{name}{self.index}"


@dataclass(frozen=True, order=True)
class SquareQuad:
    """An oriented square read as the boundary word a b a2 b2."""

    a: Letter
    b: Letter
    a2: Letter
    b2: Letter

    def __post_init__(self) -> None:
        if not (self.a.is_horizontal and self.a2.is_horizontal):
            raise ValueError(f"positions 1 and 3 must be horizontal, got {self}")
        if self.b.is_horizontal or self.b2.is_horizontal:
            raise ValueError(f"positions 2 and 4 must be vertical, got {self}")

    def letters(self) -> tuple[Letter, Letter, Letter, Letter]:
        return (self.a, self.b, self.a2, self.b2)

    def orbit(self) -> tuple[SquareQuad, SquareQuad, SquareQuad, SquareQuad]:
        """The four reflections identified by a geometric square (may repeat)."""
        a, b, a2, b2 = self.letters()
        return (
            self,
            SquareQuad(a2, b2, a, b),
            SquareQuad(a.inverse(), b2.inverse(), a2.inverse(), b.inverse()),
            SquareQuad(a2.inverse(), b.inverse(), a.inverse(), b2.inverse()),
        )

    @property
    def sort_key(self) -> tuple[int, int, int, int]:
        return (self.a.ordinal, self.b.ordinal, self.a2.ordinal, self.b2.ordinal)

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.letters())


@dataclass(frozen=True, order=True)
class GeometricSquare:
    """An identification class [a b a' b'], stored as its least representative.

    Build instances through :func:`bmrel.squares.canonicalize`; the
    constructor rejects a quad that is not the orbit minimum.
    """

    canonical: SquareQuad

    def __post_init__(self) -> None:
        least = min(self.canonical.orbit(), key=lambda q: q.sort_key)
        if least != self.canonical:
            raise ValueError(f"{self.canonical} is not canonical, expected {least}")

    @cached_property
    def sort_key(self) -> tuple[int, int, int, int]:
        return self.canonical.sort_key

    def __hash__(self) -> int:
        return hash(self.sort_key)

    @property
    def max_horizontal(self) -> int:
        return max(self.canonical.a.index, self.canonical.a2.index)

    @property
    def max_vertical(self) -> int:
        return max(self.canonical.b.index, self.canonical.b2.index)

    def __str__(self) -> str:
        return str(self.canonical)


@dataclass(frozen=True, order=True)
class LinkEdge:
    """An undirected link edge {h, v} across the A/B bipartition."""

    h: Letter
    v: Letter

    def __post_init__(self) -> None:
        if not self.h.is_horizontal or self.v.is_horizontal:
            raise ValueError(f"link edge needs one horizontal and one vertical letter: {self}")

    def pair_index(self, beta: int) -> int:
        """Bit position of this edge among the 4*alpha*beta cross pairs."""
        return self.h.code * 2 * beta + self.v.code

    def __str__(self) -> str:
        return f"{{{self.h},{self.v}}}"


@dataclass(frozen=True)
class BMRelation:
    """A set of alpha*beta geometric squares in canonical order.

    Only cardinality, ordering and ambient bounds are checked here; the
    link condition is checked by :func:`bmrel.link.validate_relation`.
    """

    alpha: int
    beta: int
    squares: tuple[GeometricSquare, ...]

    def __post_init__(self) -> None:
        if self.alpha < 1:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")
        if self.beta < 1:
            raise ValueError(f"beta must be >= 1, got {self.beta}")
        if len(self.squares) != self.alpha * self.beta:
            raise ValueError(
                f"a ({self.alpha},{self.beta}) relation has {self.alpha * self.beta} squares, "
                f"got {len(self.squares)}"
            )
        keys = [s.sort_key for s in self.squares]
        if any(k1 >= k2 for k1, k2 in zip(keys, keys[1:])):
            raise ValueError("squares must be distinct and in canonical order")
        for s in self.squares:
            if s.max_horizontal > self.alpha or s.max_vertical > self.beta:
                raise ValueError(f"square {s} outside ambient ({self.alpha},{self.beta})")

    @classmethod
    def of(cls, alpha: int, beta: int, squares: Iterable[GeometricSquare]) -> BMRelation:
        """Build from any iterable of squares, sorting and de-duplicating."""
        unique = {s.sort_key: s for s in squares}
        return cls(alpha, beta, tuple(unique[k] for k in sorted(unique)))

    @cached_property
    def sort_key(self) -> tuple[tuple[int, int, int, int], ...]:
        return tuple(s.sort_key for s in self.squares)

    def __hash__(self) -> int:
        return hash((self.alpha, self.beta, self.sort_key))

    def __iter__(self) -> Iterator[GeometricSquare]:
        return iter(self.squares)

    def __len__(self) -> int:
        return len(self.squares)

    def __contains__(self, square: object) -> bool:
        return square in self.squares

    def __str__(self) -> str:
        return "; ".join(str(s) for s in self.squares)
