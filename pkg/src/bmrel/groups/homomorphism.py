"""Generator maps between BM presentations and isomorphism certificates.

A map on generators defines a homomorphism iff every source relator maps
to a word that is trivial in the target.  A pair of homomorphisms
(forward, backward) is an isomorphism iff both composites send every
generator to itself, up to normal form.

Certificate text format::

    # comment
    source: gamma4
    target: gamma30
    fwd a = a1 a2
    fwd a2 = a1
    ...
    bwd b1 = A2 b1

Generators are named ``a1``, ``b2``, ... or, for (2,2) presentations, by
the short names a, b, c, d.  Images use the letter syntax (uppercase is
the inverse); an empty image is the identity.  ``source`` and ``target``
name a preset or a relation file holding one relation, relative to the
certificate.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from bmrel.errors import ParseError
from bmrel.groups.presentation import BMPresentation, normal_form, presentation_from_relation
from bmrel.groups.presets import PRESET_NAMES, preset_presentation
from bmrel.groups.words import PAPER_ALIASES, Word, format_word, parse_word
from bmrel.models import Letter
from bmrel.squares import parse_letter
from bmrel.store import read_level

logger = logging.getLogger(__name__)

SHIPPED_CERTIFICATES: tuple[str, ...] = ("klein", "prop1", "prop2")


@dataclass(frozen=True)
class GeneratorMap:
    """An assignment of a target word to every generator of ``source``."""

    source: BMPresentation
    target: BMPresentation
    images: Mapping[Letter, Word] = field(compare=False)

    def __post_init__(self) -> None:
        expected = set(self.source.generators())
        given = set(self.images)
        if given != expected:
            missing = sorted(expected - given)
            extra = sorted(given - expected)
            raise ValueError(
                f"images must cover exactly the source generators; "
                f"missing {[str(x) for x in missing]}, unexpected {[str(x) for x in extra]}"
            )
        for word in self.images.values():
            self.target.check_word(word)

    def image(self, letter: Letter) -> Word:
        if letter.inverted:
            return tuple(x.inverse() for x in reversed(self.images[letter.inverse()]))
        return self.images[letter]

    def apply(self, word: Word) -> Word:
        """The (unreduced) image of ``word``."""
        out: list[Letter] = []
        for x in word:
            out.extend(self.image(x))
        return tuple(out)


@dataclass(frozen=True)
class IsoCertificate:
    """Candidate inverse isomorphisms between two presentations."""

    forward: GeneratorMap
    backward: GeneratorMap

    def __post_init__(self) -> None:
        if self.forward.target != self.backward.source:
            raise ValueError("backward map must start where the forward map ends")
        if self.forward.source != self.backward.target:
            raise ValueError("backward map must end where the forward map starts")

    @property
    def source(self) -> BMPresentation:
        return self.forward.source

    @property
    def target(self) -> BMPresentation:
        return self.forward.target


def homomorphism_failures(phi: GeneratorMap) -> list[str]:
    """Source relators whose images are not trivial in the target."""
    failures = []
    for relator in phi.source.relators():
        nf = normal_form(phi.target, phi.apply(relator))
        if nf:
            failures.append(
                f"relator {format_word(relator)} maps to non-trivial {format_word(nf)}"
            )
    return failures


def check_homomorphism(phi: GeneratorMap) -> bool:
    return not homomorphism_failures(phi)


def certificate_failures(cert: IsoCertificate) -> list[str]:
    """Everything wrong with ``cert``, in check order; empty means verified."""
    failures = [f"forward: {f}" for f in homomorphism_failures(cert.forward)]
    failures += [f"backward: {f}" for f in homomorphism_failures(cert.backward)]
    for label, first, second in (
        ("backward after forward", cert.forward, cert.backward),
        ("forward after backward", cert.backward, cert.forward),
    ):
        for x in first.source.generators():
            nf = normal_form(first.source, second.apply(first.image(x)))
            if nf != (x,):
                failures.append(f"{label}: {x} goes to {format_word(nf) or '1'}")
    return failures


def verify_isomorphism(cert: IsoCertificate) -> bool:
    failures = certificate_failures(cert)
    for f in failures:
        logger.debug("certificate check failed: %s", f)
    return not failures


def resolve_generator(token: str, presentation: BMPresentation) -> Letter:
    """A positive generator from ``a1``-style or (2,2) short-name syntax."""
    if (presentation.alpha, presentation.beta) == (2, 2) and token in PAPER_ALIASES:
        return PAPER_ALIASES[token]
    letter = parse_letter(token)
    if letter.inverted or letter not in presentation.generators():
        raise ParseError(f"{token!r} is not a generator of {presentation}")
    return letter


def resolve_presentation(ref: str, base_dir: Path | None = None) -> BMPresentation:
    """A preset name, or a relation file containing exactly one relation."""
    if ref in PRESET_NAMES:
        return preset_presentation(ref)
    path = Path(ref)
    if not path.is_absolute() and base_dir is not None:
        path = base_dir / path
    if not path.exists():
        raise ParseError(f"{ref!r} is neither a preset ({', '.join(PRESET_NAMES)}) nor a file")
    level = read_level(path)
    if len(level) != 1:
        raise ParseError(f"{path} holds {len(level)} relations, expected exactly 1")
    return presentation_from_relation(level.relations[0], path.name)


def parse_certificate(text: str, base_dir: Path | None = None) -> IsoCertificate:
    """Parse certificate text (see the module docstring).

    Raises:
        ParseError: with a line number, for malformed lines, unknown or
            repeated generators, and incomplete maps.
    """
    endpoints: dict[str, BMPresentation] = {}
    images: dict[str, dict[Letter, Word]] = {"fwd": {}, "bwd": {}}
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if sep and key.strip() in ("source", "target"):
            key = key.strip()
            if key in endpoints:
                raise ParseError(f"{key} given twice", line=n)
            try:
                endpoints[key] = resolve_presentation(value.strip(), base_dir)
            except (KeyError, ValueError, OSError) as exc:
                raise ParseError(f"cannot load {key}: {exc}", line=n) from exc
            continue

        head, eq, rhs = line.partition("=")
        parts = head.split()
        if not eq or len(parts) != 2 or parts[0] not in images:
            raise ParseError(
                f"expected 'fwd|bwd <generator> = <word>', got {raw.strip()!r}", line=n
            )
        if "source" not in endpoints or "target" not in endpoints:
            raise ParseError("source and target must come before the maps", line=n)
        direction, token = parts
        domain, codomain = (
            (endpoints["source"], endpoints["target"])
            if direction == "fwd"
            else (endpoints["target"], endpoints["source"])
        )
        try:
            generator = resolve_generator(token, domain)
            word = parse_word(rhs)
            codomain.check_word(word)
        except ValueError as exc:
            raise ParseError(str(exc), line=n) from exc
        if generator in images[direction]:
            raise ParseError(f"{direction} image of {generator} given twice", line=n)
        images[direction][generator] = word

    if "source" not in endpoints or "target" not in endpoints:
        raise ParseError("certificate needs both 'source:' and 'target:'")
    source, target = endpoints["source"], endpoints["target"]
    try:
        return IsoCertificate(
            GeneratorMap(source, target, images["fwd"]),
            GeneratorMap(target, source, images["bwd"]),
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def load_certificate(path: str | Path) -> IsoCertificate:
    path = Path(path)
    return parse_certificate(path.read_text(encoding="utf-8"), path.parent)


def shipped_certificate(name: str) -> IsoCertificate:
    """One of the certificates bundled with the package (``SHIPPED_CERTIFICATES``)."""
    if name not in SHIPPED_CERTIFICATES:
        choices = ", ".join(SHIPPED_CERTIFICATES)
        raise KeyError(f"unknown certificate {name!r}; choose from {choices}")
    resource = resources.files("bmrel").joinpath("certificates").joinpath(f"{name}.cert")
    return parse_certificate(resource.read_text(encoding="utf-8"))


def format_certificate(cert: IsoCertificate) -> str:
    """Certificate text with indexed generator names; sources are the presentation names."""
    lines = [f"source: {cert.source}", f"target: {cert.target}"]
    for direction, phi in (("fwd", cert.forward), ("bwd", cert.backward)):
        for x in phi.source.generators():
            lines.append(f"{direction} {x} = {format_word(phi.images[x])}".rstrip())
    return "\n".join(lines) + "\n"
