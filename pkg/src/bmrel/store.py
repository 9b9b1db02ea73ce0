"""Text files of BM relations: one relation per line, canonical order.

File layout (UTF-8, LF line endings)::

    #bm α=1 β=2 count=15
    a1 b1 a1 b2; a1 B1 a1 B2
    ...

Each line lists the canonical representatives of the squares, in canonical
order, joined by ``"; "``.
"""

from __future__ import annotations

import hashlib
import logging
import re
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path

from bmrel.errors import AmbientMismatchError, ParseError
from bmrel.link import diagnose_relation
from bmrel.models import BMRelation, GeometricSquare
from bmrel.squares import check_ambient, parse_square

logger = logging.getLogger(__name__)

_HEADER_RE = re.compile(r"^#bm α=(\d+) β=(\d+) count=(\d+)$")
SQUARE_SEPARATOR = "; "


@dataclass(frozen=True)
class LevelFile:
    """Contents of a relation file."""

    alpha: int
    beta: int
    relations: tuple[BMRelation, ...]

    def __len__(self) -> int:
        return len(self.relations)


def format_header(alpha: int, beta: int, count: int) -> str:
    return f"#bm α={alpha} β={beta} count={count}"


def parse_header(line: str) -> tuple[int, int, int]:
    m = _HEADER_RE.match(line.rstrip("\n"))
    if m is None:
        raise ParseError(f"bad header {line.rstrip()!r}", line=1)
    alpha, beta, count = (int(g) for g in m.groups())
    if alpha < 1 or beta < 1:
        raise ParseError(f"header ambient must be positive, got ({alpha},{beta})", line=1)
    return alpha, beta, count


def serialize_relation(relation: BMRelation) -> str:
    return SQUARE_SEPARATOR.join(str(s) for s in relation.squares)


def parse_relation(
    text: str, alpha: int, beta: int, *, line: int | None = None, validate: bool = True
) -> BMRelation:
    """Parse one relation line; squares may be given by any representative.

    Raises:
        ParseError: on malformed text, wrong ambient, a repeated square, or
            (when ``validate``) a square set that fails the link condition.
    """
    try:
        squares = [parse_square(chunk) for chunk in text.split(";") if chunk.strip()]
        for s in squares:
            check_ambient(s, alpha, beta)
    except (ParseError, AmbientMismatchError) as exc:
        raise ParseError(str(exc), line=line) from exc
    seen: set[GeometricSquare] = set()
    for s in squares:
        if s in seen:
            raise ParseError(f"square {s} listed twice", line=line)
        seen.add(s)
    if validate:
        violation = diagnose_relation(squares, alpha, beta)
        if violation is not None:
            raise ParseError(f"not a BM relation: {violation}", line=line)
    try:
        return BMRelation.of(alpha, beta, squares)
    except ValueError as exc:
        raise ParseError(str(exc), line=line) from exc


def write_level(
    path: str | Path, alpha: int, beta: int, relations: Iterable[BMRelation]
) -> int:
    """Write ``relations`` sorted canonically; returns the number written."""
    ordered = sorted(set(relations), key=lambda r: r.sort_key)
    for r in ordered:
        if (r.alpha, r.beta) != (alpha, beta):
            raise AmbientMismatchError(f"relation ({r.alpha},{r.beta}) in a ({alpha},{beta}) file")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_header(alpha, beta, len(ordered)) + "\n")
        for r in ordered:
            fh.write(serialize_relation(r) + "\n")
    logger.info("wrote %d (%d,%d) relations to %s", len(ordered), alpha, beta, path)
    return len(ordered)


def read_level(path: str | Path, *, validate: bool = True) -> LevelFile:
    """Read a relation file.

    Raises:
        ParseError: on a bad header, a bad line, or a count mismatch.
    """
    with Path(path).open(encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError("empty file, expected a #bm header", line=1)
    alpha, beta, count = parse_header(lines[0])
    relations = tuple(
        parse_relation(text, alpha, beta, line=n, validate=validate)
        for n, text in enumerate(lines[1:], start=2)
        if text.strip()
    )
    if len(relations) != count:
        raise ParseError(f"header says count={count}, file has {len(relations)} relations")
    return LevelFile(alpha, beta, relations)


def verify_level_file(path: str | Path) -> list[str]:
    """Check a file end to end; returns problems found (empty when clean).

    Checks the header, that every line is a valid relation written in
    canonical form, that lines are strictly increasing, and that the
    header count matches.
    """
    problems: list[str] = []
    with Path(path).open(encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        return ["line 1: empty file, expected a #bm header"]
    try:
        alpha, beta, count = parse_header(lines[0])
    except ParseError as exc:
        return [str(exc)]

    previous: BMRelation | None = None
    seen = 0
    for n, text in enumerate(lines[1:], start=2):
        seen += 1
        try:
            relation = parse_relation(text, alpha, beta, line=n)
        except ParseError as exc:
            problems.append(str(exc))
            continue
        if serialize_relation(relation) != text:
            problems.append(f"line {n}: not in canonical form, expected {relation}")
        if previous is not None and relation.sort_key <= previous.sort_key:
            kind = "duplicate" if relation.sort_key == previous.sort_key else "out of order"
            problems.append(f"line {n}: {kind} relation")
        previous = relation
    if seen != count:
        problems.append(f"header says count={count}, file has {seen} lines")
    return problems


def file_digest(path: str | Path) -> str:
    """SHA-256 of the file bytes, for run reports."""
    digest = hashlib.sha256()
    with Path(path).open("rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()


def level_path(directory: str | Path, beta: int) -> Path:
    """Conventional file name for R_{1,beta} inside ``directory``."""
    return Path(directory) / f"r1_{beta}.bm"
