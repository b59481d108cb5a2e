import numpy as np
import pytest

from riskweave import fixture, store
from riskweave.judgments import SAATY_SCALE, ComparisonContext, ComparisonMatrix


@pytest.fixture(scope="session")
def paper_doc():
    return fixture.paper_model_document()


@pytest.fixture(scope="session")
def paper_model(paper_doc):
    return store.load_model(paper_doc)


def eig_oracle(a: np.ndarray) -> tuple[np.ndarray, float]:
    """Independent dense eigensolver: Perron vector and eigenvalue."""
    vals, vecs = np.linalg.eig(a)
    k = int(np.argmax(vals.real))
    w = np.abs(vecs[:, k].real)
    return w / w.sum(), float(vals[k].real)


def random_reciprocal(rng: np.random.Generator, n: int) -> ComparisonMatrix:
    """Random judgment matrix with upper-triangle values off the 9-point scale."""
    upper = [rng.choice(SAATY_SCALE) for _ in range(n * (n - 1) // 2)]
    return ComparisonMatrix.from_upper("random", [f"e{i}" for i in range(n)], upper)


def context_for(matrix_elements, context_id="ctx", control="control"):
    return ComparisonContext(
        id=context_id, kind="local_priorities", control=control,
        compared=tuple(matrix_elements), column=None,
    )


MAIN5_ELEMENTS = (
    "individual-skills", "power", "knowledge-expertise", "experience", "personality-traits"
)
MAIN5_UPPER = ("1/3", "1/7", "1/9", "1/2", "1/3", "1/5", "5", "1/2", "5", "7")

# frozen from an independent dense eigensolver on the matrix above
MAIN5_WEIGHTS = (0.039880265761, 0.139277349016, 0.287403555954, 0.478121600104, 0.055317229165)
MAIN5_LAMBDA = 5.219296623606


def main5_matrix() -> ComparisonMatrix:
    return ComparisonMatrix.from_upper("criteria-vs-goal", MAIN5_ELEMENTS, MAIN5_UPPER)
