"""BM group presentations and table-driven normal forms.

Every element of an (alpha, beta)-BM group is written uniquely as u*v with
u a reduced word in the horizontal generators and v a reduced word in the
vertical ones.  The link condition gives, for each vertical letter y and
horizontal letter x, exactly one relator square with y x on its boundary,
which turns y*x into some x'*y'.  Normal forms move each horizontal letter
left through the vertical suffix with those rules.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from bmrel.errors import AmbientMismatchError, StructuralCorruptionError
from bmrel.groups.words import Word, free_reduce, generators
from bmrel.link import diagnose_relation
from bmrel.models import BMRelation, Letter

RewriteTable = dict[tuple[Letter, Letter], tuple[Letter, Letter]]


@dataclass(frozen=True)
class BMPresentation:
    """<A_alpha, B_beta | R> together with its rewriting table.

    Attributes:
        relation: The defining BM relation.
        table: (b, a') -> (a, b') for every square [a b a' b'], i.e. the
            relator read so that b a' = a^-1 b'^-1.
        name: Optional label used in reports.
    """

    relation: BMRelation
    table: RewriteTable = field(compare=False, repr=False)
    name: str | None = field(default=None, compare=False)

    @property
    def alpha(self) -> int:
        return self.relation.alpha

    @property
    def beta(self) -> int:
        return self.relation.beta

    def generators(self) -> list[Letter]:
        return generators(self.alpha, self.beta)

    def relators(self) -> list[Word]:
        return [s.canonical.letters() for s in self.relation.squares]

    def rewrite(self, y: Letter, x: Letter) -> tuple[Letter, Letter]:
        """The pair (x', y') with y x = x' y' in the group."""
        a, b2 = self.table[(y, x)]
        return a.inverse(), b2.inverse()

    def check_word(self, word: Word) -> None:
        for x in word:
            bound = self.alpha if x.is_horizontal else self.beta
            if x.index > bound:
                raise AmbientMismatchError(
                    f"letter {x} is not a generator of a ({self.alpha},{self.beta}) presentation"
                )

    def __str__(self) -> str:
        return self.name or f"<({self.alpha},{self.beta}) | {self.relation}>"


def presentation_from_relation(relation: BMRelation, name: str | None = None) -> BMPresentation:
    """Build the presentation and its (total) rewriting table.

    Raises:
        StructuralCorruptionError: if the relation fails the link condition,
            which shows up as a duplicate or missing (b, a') key.
    """
    table: RewriteTable = {}
    for square in relation.squares:
        for quad in set(square.canonical.orbit()):
            key = (quad.b, quad.a2)
            if key in table:
                raise StructuralCorruptionError(
                    f"duplicate rewriting key ({quad.b}, {quad.a2}) from square {square}"
                )
            table[key] = (quad.a, quad.b2)

    expected = 4 * relation.alpha * relation.beta
    if len(table) != expected:
        violation = diagnose_relation(relation.squares, relation.alpha, relation.beta)
        raise StructuralCorruptionError(
            f"rewriting table has {len(table)} of {expected} entries ({violation})"
        )
    return BMPresentation(relation, table, name)


def normal_form(presentation: BMPresentation, word: Word) -> Word:
    """The horizontal-prefix normal form u*v of ``word``.

    Scans left to right; each horizontal letter is rewritten leftwards past
    the current vertical suffix, then both parts are freely reduced.
    """
    presentation.check_word(word)
    head: list[Letter] = []
    tail: list[Letter] = []
    for x in word:
        if not x.is_horizontal:
            if tail and tail[-1] == x.inverse():
                tail.pop()
            else:
                tail.append(x)
            continue
        for i in range(len(tail) - 1, -1, -1):
            x, tail[i] = presentation.rewrite(tail[i], x)
        tail = list(free_reduce(tail))
        if head and head[-1] == x.inverse():
            head.pop()
        else:
            head.append(x)
    return tuple(head) + tuple(tail)


def is_trivial(presentation: BMPresentation, word: Word) -> bool:
    return not normal_form(presentation, word)
