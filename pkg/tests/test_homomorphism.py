"""Tests for bmrel.groups.homomorphism: generator maps and isomorphism certificates."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from bmrel.errors import ParseError
from bmrel.groups.homomorphism import (
    SHIPPED_CERTIFICATES,
    GeneratorMap,
    IsoCertificate,
    certificate_failures,
    check_homomorphism,
    format_certificate,
    load_certificate,
    parse_certificate,
    shipped_certificate,
    verify_isomorphism,
)
from bmrel.groups.presentation import BMPresentation, normal_form
from bmrel.groups.presets import preset_presentation
from bmrel.groups.words import Word, parse_word
from bmrel.models import Letter
from bmrel.store import write_level

NOT_INVERSE = """\
source: z2
target: z2
fwd a1 = a1
fwd b1 = b1
bwd a1 = a1 a1
bwd b1 = b1
"""


def _identity_images(p: BMPresentation) -> dict[Letter, tuple[Letter, ...]]:
    return {x: (x,) for x in p.generators()}


def _random_word(rng: random.Random, p: BMPresentation, max_len: int = 40) -> Word:
    letters = p.generators()
    letters += [x.inverse() for x in letters]
    return tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))


class TestShippedCertificates:
    @pytest.mark.parametrize("name", SHIPPED_CERTIFICATES)
    def test_verifies(self, name: str):
        cert = shipped_certificate(name)
        assert certificate_failures(cert) == []
        assert verify_isomorphism(cert)

    def test_endpoints(self, gamma4: BMPresentation, gamma30: BMPresentation):
        cert = shipped_certificate("prop1")
        assert cert.source == gamma4
        assert cert.target == gamma30

    def test_maps_are_homomorphisms(self):
        cert = shipped_certificate("prop2")
        assert check_homomorphism(cert.forward)
        assert check_homomorphism(cert.backward)

    def test_unknown(self):
        with pytest.raises(KeyError, match="unknown certificate"):
            shipped_certificate("prop3")

    def test_format_round_trip(self):
        cert = shipped_certificate("prop2")
        again = parse_certificate(format_certificate(cert))
        assert again == cert
        assert again.forward.images == cert.forward.images
        assert verify_isomorphism(again)


class TestGeneratorMap:
    def test_apply_inverts_images(self):
        cert = shipped_certificate("prop1")
        assert cert.forward.apply(parse_word("A1")) == parse_word("A2 A1")
        assert cert.forward.apply(parse_word("b2 a2")) == parse_word("b2 A1 a1")

    def test_identity_is_not_a_homomorphism(
        self, gamma4: BMPresentation, gamma30: BMPresentation
    ):
        phi = GeneratorMap(gamma4, gamma30, _identity_images(gamma4))
        assert not check_homomorphism(phi)

    def test_missing_generator(self, gamma4: BMPresentation, gamma30: BMPresentation):
        images = _identity_images(gamma4)
        del images[Letter.vertical(2)]
        with pytest.raises(ValueError, match="missing"):
            GeneratorMap(gamma4, gamma30, images)

    def test_image_outside_target(self):
        z2 = preset_presentation("z2")
        images = {x: (Letter.horizontal(2),) for x in z2.generators()}
        with pytest.raises(ValueError, match="a2 is not a generator"):
            GeneratorMap(z2, z2, images)

    def test_mismatched_certificate(self, gamma4: BMPresentation, gamma30: BMPresentation):
        forward = GeneratorMap(gamma4, gamma30, _identity_images(gamma4))
        with pytest.raises(ValueError, match="start where"):
            IsoCertificate(forward, forward)


class TestFailures:
    def test_identity_failure_reported_first(
        self, gamma4: BMPresentation, gamma30: BMPresentation
    ):
        cert = IsoCertificate(
            GeneratorMap(gamma4, gamma30, _identity_images(gamma4)),
            GeneratorMap(gamma30, gamma4, _identity_images(gamma30)),
        )
        failures = certificate_failures(cert)
        assert failures
        assert failures[0].startswith("forward: relator a1 b1 a1 B1")
        assert not verify_isomorphism(cert)

    def test_composite_not_identity(self):
        failures = certificate_failures(parse_certificate(NOT_INVERSE))
        assert failures[0] == "backward after forward: a1 goes to a1 a1"
        assert "forward after backward: a1 goes to a1 a1" in failures


class TestCertificateParsing:
    def test_short_names_only_for_pair_presets(self):
        text = "source: z2\ntarget: z2\nfwd c = a1\n"
        with pytest.raises(ParseError, match="line 3"):
            parse_certificate(text)

    def test_unknown_generator(self):
        text = "source: gamma4\ntarget: gamma30\nfwd a3 = a1\n"
        with pytest.raises(ParseError, match="line 3.*not a generator"):
            parse_certificate(text)

    def test_image_outside_codomain(self):
        text = "source: z2\ntarget: z2\nfwd a1 = a2\n"
        with pytest.raises(ParseError, match="line 3"):
            parse_certificate(text)

    def test_repeated_generator(self):
        text = "source: z2\ntarget: z2\nfwd a1 = a1\nfwd a1 = b1\n"
        with pytest.raises(ParseError, match="line 4.*given twice"):
            parse_certificate(text)

    def test_incomplete_map(self):
        text = "source: z2\ntarget: z2\nfwd a1 = a1\nbwd a1 = a1\nbwd b1 = b1\n"
        with pytest.raises(ParseError, match="missing"):
            parse_certificate(text)

    def test_maps_before_endpoints(self):
        with pytest.raises(ParseError, match="line 1.*must come before"):
            parse_certificate("fwd a1 = a1\n")

    def test_malformed_line(self):
        with pytest.raises(ParseError, match="line 3.*expected"):
            parse_certificate("source: z2\ntarget: z2\nmap a1 -> a1\n")

    def test_unknown_source(self):
        with pytest.raises(ParseError, match="line 1.*cannot load source"):
            parse_certificate("source: nowhere.bm\n")

    def test_comments_and_blank_lines(self):
        text = "# swap\n\nsource: klein1  # left\ntarget: klein2\n" + "\n".join(
            ["fwd a1 = b1", "fwd b1 = a1", "bwd a1 = b1", "bwd b1 = a1"]
        )
        assert verify_isomorphism(parse_certificate(text))

    def test_file_endpoints_resolve_relative_to_certificate(self, tmp_path: Path):
        for name in ("klein1", "klein2"):
            write_level(tmp_path / f"{name}.bm", 1, 1, [preset_presentation(name).relation])
        cert_path = tmp_path / "swap.cert"
        cert_path.write_text(
            "source: klein1.bm\ntarget: klein2.bm\n"
            "fwd a1 = b1\nfwd b1 = a1\nbwd a1 = b1\nbwd b1 = a1\n",
            encoding="utf-8",
        )
        cert = load_certificate(cert_path)
        assert cert.source.name == "klein1.bm"
        assert verify_isomorphism(cert)


class TestSoundness:
    @pytest.mark.parametrize("name", ["prop1", "prop2"])
    def test_respects_products(self, name: str, rng: random.Random):
        cert = shipped_certificate(name)
        for phi in (cert.forward, cert.backward):
            target = phi.target
            for _ in range(300):
                u, v = _random_word(rng, phi.source), _random_word(rng, phi.source)
                assert normal_form(target, phi.apply(u + v)) == normal_form(
                    target, normal_form(target, phi.apply(u)) + normal_form(target, phi.apply(v))
                )

    @pytest.mark.parametrize("name", ["prop1", "prop2"])
    def test_equal_words_have_equal_images(self, name: str, rng: random.Random):
        cert = shipped_certificate(name)
        phi = cert.forward
        relators = phi.source.relators()
        for _ in range(300):
            u, v = _random_word(rng, phi.source), _random_word(rng, phi.source)
            r = rng.choice(relators)
            assert normal_form(phi.target, phi.apply(u + r + v)) == normal_form(
                phi.target, phi.apply(u + v)
            )

    @pytest.mark.parametrize("name", ["prop1", "prop2"])
    def test_round_trip_is_identity(self, name: str, rng: random.Random):
        cert = shipped_certificate(name)
        source = cert.source
        for _ in range(300):
            w = _random_word(rng, source)
            back = cert.backward.apply(cert.forward.apply(w))
            assert normal_form(source, back) == normal_form(source, w)
