"""Shared test fixtures for the bmrel test suite."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from bmrel.groups.presentation import BMPresentation
from bmrel.groups.presets import preset_presentation
from bmrel.models import BMRelation
from bmrel.search import enumerate_relations
from bmrel.store import parse_relation

DATA_DIR = Path(__file__).parent / "data"
DEFAULT_SEED = 20060705


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption(
        "--seed", action="store", type=int, default=DEFAULT_SEED,
        help="seed for randomized property tests",
    )


def _load_listing(name: str, alpha: int, beta: int) -> set[BMRelation]:
    """Relations from a golden listing under tests/data ('#' lines are comments)."""
    lines = (DATA_DIR / name).read_text(encoding="utf-8").splitlines()
    return {
        parse_relation(line, alpha, beta)
        for line in lines
        if line.strip() and not line.startswith("#")
    }


@pytest.fixture
def seed(request: pytest.FixtureRequest) -> int:
    return int(request.config.getoption("--seed"))


@pytest.fixture
def rng(seed: int) -> random.Random:
    return random.Random(seed)


@pytest.fixture(scope="session")
def r11() -> list[BMRelation]:
    """R(1,1): the torus and the two Klein bottle relations."""
    return list(enumerate_relations(1, 1))


@pytest.fixture(scope="session")
def r12() -> list[BMRelation]:
    return list(enumerate_relations(1, 2))


@pytest.fixture(scope="session")
def r22() -> list[BMRelation]:
    return list(enumerate_relations(2, 2))


@pytest.fixture(scope="session")
def listed_r12() -> set[BMRelation]:
    """The fifteen (1,2) relations as printed in the published listing."""
    return _load_listing("r1_2_listing.txt", 1, 2)


@pytest.fixture(scope="session")
def listed_r13_from_torus_pair() -> set[BMRelation]:
    return _load_listing("r1_3_from_torus_pair.txt", 1, 3)


@pytest.fixture
def gamma4() -> BMPresentation:
    return preset_presentation("gamma4")


@pytest.fixture
def gamma30() -> BMPresentation:
    return preset_presentation("gamma30")


@pytest.fixture
def gamma5() -> BMPresentation:
    return preset_presentation("gamma5")


@pytest.fixture
def gamma10() -> BMPresentation:
    return preset_presentation("gamma10")
