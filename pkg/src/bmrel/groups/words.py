"""Words over A_alpha^{+-1} and B_beta^{+-1}: free reduction and text forms."""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping

from bmrel.errors import ParseError
from bmrel.models import Letter
from bmrel.squares import parse_letter

Word = tuple[Letter, ...]

# Short names for the (2,2) generators: a, b, c, d = a1, a2, b1, b2.
PAPER_ALIASES: dict[str, Letter] = {
    "a": Letter.horizontal(1),
    "b": Letter.horizontal(2),
    "c": Letter.vertical(1),
    "d": Letter.vertical(2),
}

_RELATOR_TOKEN = re.compile(r"([a-z])(\^\{?-1\}?|⁻¹)?")


def generators(alpha: int, beta: int) -> list[Letter]:
    """a_1..a_alpha, b_1..b_beta: the fixed column order for exponent matrices."""
    return [Letter.horizontal(i) for i in range(1, alpha + 1)] + [
        Letter.vertical(j) for j in range(1, beta + 1)
    ]


def free_reduce(word: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for x in word:
        if out and out[-1] == x.inverse():
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse_word(word: Word) -> Word:
    return tuple(x.inverse() for x in reversed(word))


def format_word(word: Word) -> str:
    return " ".join(str(x) for x in word)


def parse_word(text: str) -> Word:
    """Parse a whitespace-separated word such as ``"a1 a2 B1"``; blank means empty."""
    return tuple(parse_letter(t) for t in text.split())


def parse_relator(text: str, aliases: Mapping[str, Letter] = PAPER_ALIASES) -> Word:
    """Parse compact notation such as ``"bc^-1bd^-1"`` through single-letter aliases."""
    compact = text.replace(" ", "")
    word: list[Letter] = []
    pos = 0
    while pos < len(compact):
        m = _RELATOR_TOKEN.match(compact, pos)
        if m is None or m.group(1) not in aliases:
            raise ParseError(f"cannot parse relator {text!r} at position {pos}")
        letter = aliases[m.group(1)]
        word.append(letter.inverse() if m.group(2) else letter)
        pos = m.end()
    return tuple(word)
