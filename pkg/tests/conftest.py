import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from coxcoh.fans import (  # noqa: E402
    blowup_p11336_fan,
    blowup_p112236_fan,
    projective_space_fan,
    weighted_projective_fan,
)
from coxcoh.grading import GradingClass, grading_group, match_degree_basis  # noqa: E402
from coxcoh.linalg import solve_rational  # noqa: E402

REPO_ROOT = Path(__file__).resolve().parent.parent
FANS_DIR = REPO_ROOT / "fans"

# published degree tables for the two Fano blowup fans
FANO7_DEGREES = [(1, 0), (1, 0), (3, 0), (3, 0), (6, 1), (0, 1), (1, 0)]
FANO8_DEGREES = [
    (1, 0, 0),
    (2, 1, 0),
    (2, 1, 0),
    (3, 1, 0),
    (6, 3, 1),
    (0, 0, 1),
    (0, 1, 0),
    (1, 0, 0),
]

FANO7_IDEAL = ["x6x7", "x4x6", "x3x6", "x2x6", "x1x6", "x5x7", "x4x5", "x3x5", "x2x5", "x1x5"]
FANO8_IDEAL = (
    "x6x7x8 x5x7x8 x4x6x7 x4x5x7 x3x6x8 x3x5x8 x3x4x6 x3x4x5 x2x6x8 x2x5x8 "
    "x2x4x6 x2x4x5 x1x6x7 x1x5x7 x1x3x6 x1x3x5 x1x2x6 x1x2x5"
).split()


class PublishedBasis:
    """Translate degree tuples from the published convention into the
    computed Smith-normal-form basis (and back)."""

    def __init__(self, grading, published_table):
        self.grading = grading
        targets = [GradingClass(tuple(t), ()) for t in published_table]
        self.to_published = match_degree_basis(grading.variable_degrees(), targets)
        assert self.to_published is not None, "no basis automorphism matches the published table"
        fr = grading.free_rank
        self._matrix = [[Fraction(v) for v in row] for row in self.to_published]

    def cls(self, published_free, torsion=()):
        sol = solve_rational(self._matrix, list(published_free))
        assert sol is not None and all(x.denominator == 1 for x in sol)
        return self.grading.class_from_free([int(x) for x in sol], torsion)


@pytest.fixture(scope="session")
def p1_fan():
    return projective_space_fan(1)


@pytest.fixture(scope="session")
def p2_fan():
    return projective_space_fan(2)


@pytest.fixture(scope="session")
def p112_fan():
    return weighted_projective_fan([1, 1, 2])


@pytest.fixture(scope="session")
def fano7_fan():
    return blowup_p11336_fan()


@pytest.fixture(scope="session")
def fano8_fan():
    return blowup_p112236_fan()


@pytest.fixture(scope="session")
def fano7_basis(fano7_fan):
    return PublishedBasis(grading_group(fano7_fan), FANO7_DEGREES)


@pytest.fixture(scope="session")
def fano8_basis(fano8_fan):
    return PublishedBasis(grading_group(fano8_fan), FANO8_DEGREES)
