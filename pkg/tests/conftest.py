import pytest

from fibdiff.pipeline import ProofConfig, run_proof

KNOWN_SOLUTIONS = [
    (1, 0, 0), (2, 0, 0), (3, 0, 1), (3, 1, 0), (3, 2, 0), (4, 1, 1), (4, 2, 1), (4, 3, 0),
    (5, 1, 2), (5, 2, 2), (5, 4, 1), (6, 0, 3), (7, 5, 3), (8, 5, 4), (8, 7, 3), (9, 3, 5),
]


@pytest.fixture(scope="session")
def certificate():
    return run_proof(ProofConfig())


@pytest.fixture(scope="session")
def known_solutions():
    return list(KNOWN_SOLUTIONS)
