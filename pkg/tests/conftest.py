from fractions import Fraction
from pathlib import Path

import pytest

from gradedlie import (
    BasisElement,
    GradedLieAlgebra,
    custom_g0,
    free_nilpotent,
    universal_prolongation,
)
from gradedlie import specfile

CORPUS = Path(__file__).resolve().parents[1] / "corpus"

# action of the standard line-preserving generators on the X1, X2, X3 basis
LAMBDA_1 = [[1, 0, 0], [0, 1, 0], [0, 0, 2]]
LAMBDA_2 = [[1, 0, 0], [0, -1, 0], [0, 0, 0]]


def make_eta3() -> GradedLieAlgebra:
    return GradedLieAlgebra(
        [BasisElement("X1", -1), BasisElement("X2", -1), BasisElement("X3", -2)],
        {(0, 1): {2: Fraction(1)}},
    )


@pytest.fixture(scope="session")
def eta3():
    return make_eta3()


@pytest.fixture(scope="session")
def lambda_g0(eta3):
    return custom_g0(eta3, [LAMBDA_1, LAMBDA_2])


@pytest.fixture(scope="session")
def example5_result(eta3, lambda_g0):
    return universal_prolongation(eta3, lambda_g0)


@pytest.fixture(scope="session")
def m25():
    return free_nilpotent(2, 3)


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS


@pytest.fixture(scope="session")
def corpus_results(corpus_dir):
    """name -> (spec, symbol, g0, prolongation result) for every corpus file."""
    out = {}
    for path in sorted(corpus_dir.glob("*.json")):
        spec = specfile.parse_spec(specfile.load_document(path.read_text()))
        symbol = specfile.build_symbol(spec)
        g0 = specfile.build_g0(spec, symbol)
        result = universal_prolongation(symbol, g0, max_degree=spec.max_degree)
        out[spec.name] = (spec, symbol, g0, result)
    return out
