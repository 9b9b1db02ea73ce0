"""Tests for bmrel.groups words, presentations, presets and normal forms."""

from __future__ import annotations

import random

import pytest

from bmrel.errors import AmbientMismatchError, ParseError, StructuralCorruptionError
from bmrel.groups.presentation import (
    BMPresentation,
    is_trivial,
    normal_form,
    presentation_from_relation,
)
from bmrel.groups.presets import PRESET_NAMES, preset_presentation, relation_from_relators
from bmrel.groups.words import (
    Word,
    format_word,
    free_reduce,
    generators,
    inverse_word,
    parse_relator,
    parse_word,
)
from bmrel.models import BMRelation
from bmrel.squares import parse_square

PAIR_PRESETS = ["gamma4", "gamma30", "gamma5", "gamma10"]


def _random_word(rng: random.Random, presentation: BMPresentation, max_len: int = 12) -> Word:
    letters = presentation.generators()
    letters += [x.inverse() for x in letters]
    return tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))


class TestWords:
    def test_free_reduce(self):
        assert free_reduce(parse_word("a1 b1 B1 A1 a2")) == parse_word("a2")
        assert free_reduce(parse_word("a1 A1")) == ()

    def test_inverse_word(self):
        assert inverse_word(parse_word("a1 b2 A2")) == parse_word("a2 B2 A1")

    def test_text_round_trip(self):
        w = parse_word("a1 B2 A3")
        assert parse_word(format_word(w)) == w
        assert parse_word("  ") == ()

    def test_parse_relator(self):
        assert parse_relator("bc^-1bd^-1") == parse_word("a2 B1 a2 B2")
        assert parse_relator("ada^{-1}d") == parse_word("a1 b2 A1 b2")
        assert parse_relator("acac⁻¹") == parse_word("a1 b1 a1 B1")

    def test_parse_relator_rejects_unknown(self):
        with pytest.raises(ParseError, match="position 2"):
            parse_relator("abx")

    def test_generators_order(self):
        assert format_word(tuple(generators(2, 1))) == "a1 a2 b1"


class TestPresentation:
    def test_table_is_total(self, gamma4: BMPresentation):
        assert len(gamma4.table) == 16
        assert gamma4.relators() == [parse_word(str(s)) for s in gamma4.relation.squares]

    def test_duplicate_key_rejected(self):
        broken = BMRelation.of(1, 2, [parse_square("a1 b1 A1 B1"), parse_square("a1 b1 a1 B1")])
        with pytest.raises(StructuralCorruptionError, match="duplicate"):
            presentation_from_relation(broken)

    def test_presets_are_valid(self):
        for name in PRESET_NAMES:
            p = preset_presentation(name)
            assert p.name == name
            assert str(p) == name

    def test_unknown_preset(self):
        with pytest.raises(KeyError, match="unknown preset"):
            preset_presentation("gamma99")

    def test_relators_must_form_relation(self):
        words = [parse_word("a1 b1 A1 B1"), parse_word("a1 b1 a1 B1")]
        with pytest.raises(StructuralCorruptionError, match="not form a BM relation"):
            relation_from_relators(words, 1, 2)


class TestNormalForm:
    def test_gamma30_identity_from_isomorphism_proof(self, gamma30: BMPresentation):
        assert normal_form(gamma30, parse_word("a1 a1 b1 a1 b2 A1")) == ()

    def test_single_rewrite(self, gamma5: BMPresentation):
        assert normal_form(gamma5, parse_word("b1 a1")) == parse_word("A1 b1")

    def test_torus_commutes(self):
        z2 = preset_presentation("z2")
        assert normal_form(z2, parse_word("b1 a1 B1")) == parse_word("a1")
        assert normal_form(z2, parse_word("b1 b1 a1 A1 a1")) == parse_word("a1 b1 b1")

    def test_klein_relation(self):
        klein = preset_presentation("klein1")
        # a b a B = 1, so b a = A b
        assert normal_form(klein, parse_word("b1 a1")) == parse_word("A1 b1")

    def test_outside_ambient(self, gamma4: BMPresentation):
        with pytest.raises(AmbientMismatchError, match="b3"):
            normal_form(gamma4, parse_word("a1 b3"))

    def test_all_relators_trivial(self, r22: list[BMRelation]):
        for relation in r22:
            p = presentation_from_relation(relation)
            for relator in p.relators():
                assert is_trivial(p, relator)
                assert is_trivial(p, inverse_word(relator))
                for k in range(1, 4):
                    assert is_trivial(p, relator[k:] + relator[:k])

    @pytest.mark.parametrize("name", PAIR_PRESETS)
    def test_shape(self, name: str, rng: random.Random):
        p = preset_presentation(name)
        for _ in range(1000):
            nf = normal_form(p, _random_word(rng, p, max_len=40))
            head = [x for x in nf if x.is_horizontal]
            assert list(nf[: len(head)]) == head
            assert free_reduce(nf[: len(head)]) == nf[: len(head)]
            assert free_reduce(nf[len(head) :]) == nf[len(head) :]

    @pytest.mark.parametrize("name", PAIR_PRESETS)
    def test_group_laws(self, name: str, rng: random.Random):
        p = preset_presentation(name)
        for _ in range(1000):
            u, v = _random_word(rng, p, max_len=40), _random_word(rng, p, max_len=40)
            nu = normal_form(p, u)
            assert normal_form(p, nu) == nu
            assert normal_form(p, u + inverse_word(u)) == ()
            assert normal_form(p, u + v) == normal_form(p, nu + normal_form(p, v))

    @pytest.mark.parametrize("name", PAIR_PRESETS)
    def test_inserting_relator_changes_nothing(self, name: str, rng: random.Random):
        p = preset_presentation(name)
        relators = p.relators()
        for _ in range(300):
            u, v = _random_word(rng, p), _random_word(rng, p)
            r = rng.choice(relators)
            assert normal_form(p, u + r + v) == normal_form(p, u + v)
