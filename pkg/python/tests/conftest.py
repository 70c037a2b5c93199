import random
from pathlib import Path

import pytest

from lrcoh.action import CyclicActionType
from lrcoh.lrc import LieRinehartComplex
from lrcoh.wpoly import WeightedAlgebra, WeightSystem, parse_poly

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"

CUBIC = "x1^3 + x2^3 + x3^3"
E8 = "x1^2 + x2^3 + x3^5"


def make_algebra(text: str, degree: int, weights) -> WeightedAlgebra:
    return WeightedAlgebra(parse_poly(text), WeightSystem(degree, weights))


@pytest.fixture(scope="session")
def problems_dir() -> Path:
    return PROBLEMS


@pytest.fixture(scope="session")
def cubic() -> WeightedAlgebra:
    return make_algebra(CUBIC, 3, (1, 1, 1))


@pytest.fixture(scope="session")
def e8() -> WeightedAlgebra:
    return make_algebra(E8, 30, (15, 10, 6))


@pytest.fixture(scope="session")
def z3() -> CyclicActionType:
    return CyclicActionType(3, (1, 1, 2))


@pytest.fixture(scope="session")
def cubic_cx(cubic) -> LieRinehartComplex:
    return LieRinehartComplex(cubic, 6)


@pytest.fixture(scope="session")
def cubic_z3_cx(cubic, z3) -> LieRinehartComplex:
    return LieRinehartComplex(cubic, 6, z3)


@pytest.fixture(scope="session")
def e8_cx(e8) -> LieRinehartComplex:
    return LieRinehartComplex(e8, 60)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)
