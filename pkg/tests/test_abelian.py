"""Tests for bmrel.groups.abelian: exponent matrices, invariants and classification."""

from __future__ import annotations

import math
import random
from itertools import combinations

import numpy as np
import pytest
from sympy import Matrix

from bmrel.groups.abelian import (
    AbelianInvariants,
    ClassificationReport,
    abelianization,
    classify_by_abelianization,
    exponent_matrix,
    invariants_of_matrix,
)
from bmrel.groups.presentation import BMPresentation, presentation_from_relation
from bmrel.groups.presets import preset_presentation
from bmrel.models import BMRelation


def _determinantal_oracle(matrix: np.ndarray) -> AbelianInvariants:
    """Invariants from gcds of k x k minors: d_k = D_k / D_{k-1}."""
    m = Matrix(matrix.tolist())
    rows, cols = m.shape
    divisors = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = math.gcd(g, int(m.extract(list(rs), list(cs)).det()))
        if g == 0:
            break
        divisors.append(g)
    factors = [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]
    rank = len(divisors) - 1
    return AbelianInvariants(cols - rank, tuple(d for d in factors if d > 1))


class TestAbelianInvariants:
    def test_text_form(self):
        assert str(AbelianInvariants(1, (2, 2, 2))) == "Z^1 ⊕ Z/2 ⊕ Z/2 ⊕ Z/2"
        assert str(AbelianInvariants(0, (3,))) == "Z/3"
        assert str(AbelianInvariants(2)) == "Z^2"
        assert str(AbelianInvariants(0)) == "0"

    def test_divisibility_chain_required(self):
        with pytest.raises(ValueError, match="divisibility chain"):
            AbelianInvariants(0, (4, 2))

    def test_unit_torsion_rejected(self):
        with pytest.raises(ValueError, match=">= 2"):
            AbelianInvariants(0, (1, 2))

    def test_negative_rank(self):
        with pytest.raises(ValueError, match="free_rank"):
            AbelianInvariants(-1)

    @pytest.mark.parametrize(
        ("diagonal", "expected"),
        [
            ([2, 4, 0], AbelianInvariants(1, (2, 4))),
            ([6, 4], AbelianInvariants(0, (2, 12))),
            ([1, 1], AbelianInvariants(0)),
            ([-3, 0, 0], AbelianInvariants(2, (3,))),
            ([2, 3, 5], AbelianInvariants(0, (30,))),
        ],
    )
    def test_from_diagonal(self, diagonal: list[int], expected: AbelianInvariants):
        assert AbelianInvariants.from_diagonal(diagonal) == expected

    def test_trivial(self):
        assert AbelianInvariants.from_diagonal([1, -1]).is_trivial
        assert not AbelianInvariants.from_diagonal([0]).is_trivial


class TestExponentMatrix:
    def test_gamma5(self, gamma5: BMPresentation):
        expected = np.array([[2, 0, 0, 0], [2, 0, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]])
        assert np.array_equal(exponent_matrix(gamma5), expected)

    def test_shape_and_dtype(self, gamma4: BMPresentation):
        m = exponent_matrix(gamma4)
        assert m.shape == (4, 4)
        assert m.dtype == np.int64

    def test_zero_matrix(self):
        assert invariants_of_matrix(np.zeros((1, 2), dtype=np.int64)) == AbelianInvariants(2)


class TestAbelianization:
    @pytest.mark.parametrize(
        ("name", "expected"),
        [
            ("gamma4", "Z^1 ⊕ Z/2 ⊕ Z/4"),
            ("gamma30", "Z^1 ⊕ Z/2 ⊕ Z/4"),
            ("gamma5", "Z^1 ⊕ Z/2 ⊕ Z/2 ⊕ Z/2"),
            ("gamma10", "Z^1 ⊕ Z/2 ⊕ Z/2 ⊕ Z/2"),
            ("z2", "Z^2"),
            ("klein1", "Z^1 ⊕ Z/2"),
            ("klein2", "Z^1 ⊕ Z/2"),
        ],
    )
    def test_presets(self, name: str, expected: str):
        assert str(abelianization(preset_presentation(name))) == expected

    def test_isomorphic_presets_agree(
        self,
        gamma4: BMPresentation,
        gamma30: BMPresentation,
        gamma5: BMPresentation,
        gamma10: BMPresentation,
    ):
        assert abelianization(gamma4) == abelianization(gamma30)
        assert abelianization(gamma5) == abelianization(gamma10)
        assert abelianization(gamma4) != abelianization(gamma5)

    def test_matches_minor_oracle(self, r22: list[BMRelation], rng: random.Random):
        for relation in rng.sample(r22, 60):
            p = presentation_from_relation(relation)
            assert abelianization(p) == _determinantal_oracle(exponent_matrix(p))


@pytest.fixture(scope="module")
def report(r22: list[BMRelation]) -> ClassificationReport:
    return classify_by_abelianization(r22)


class TestClassify:
    def test_partition(self, report: ClassificationReport, r22: list[BMRelation]):
        assert report.total == 541
        assert sum(report.sizes()) == 541
        members = [r for _, rs in report.classes for r in rs]
        assert set(members) == set(r22)

    def test_classes_sorted(self, report: ClassificationReport):
        keys = [inv for inv, _ in report.classes]
        assert keys == sorted(keys)
        assert report.class_count == len(set(keys)) > 1

    def test_regression_partition(self, report: ClassificationReport):
        assert report.class_count == 19
        assert report.sizes() == [
            2, 16, 4, 32, 8, 8, 64, 80, 28, 60, 16, 16, 16, 120, 38, 8, 12, 12, 1,
        ]

    def test_isomorphic_presets_share_class(self, report: ClassificationReport):
        def cls(name: str) -> AbelianInvariants | None:
            return report.class_of(preset_presentation(name).relation)

        assert cls("gamma4") == cls("gamma30") == AbelianInvariants(1, (2, 4))
        assert cls("gamma5") == cls("gamma10") == AbelianInvariants(1, (2, 2, 2))

    def test_parallel_agrees(self, report: ClassificationReport, r22: list[BMRelation]):
        assert classify_by_abelianization(r22, jobs=2) == report

    def test_empty(self):
        with pytest.raises(ValueError, match="at least one"):
            classify_by_abelianization([])

    def test_mixed_ambient(self, r11: list[BMRelation], r22: list[BMRelation]):
        with pytest.raises(ValueError, match="one ambient"):
            classify_by_abelianization([r11[0], r22[0]])
