"""Principal-eigenvector priorities and consistency diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from riskweave.judgments import ComparisonMatrix

# Saaty random indices for n = 1..10.
RANDOM_INDEX = (0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49)

CR_THRESHOLD = 0.1


class PriorityError(ValueError):
    """Eigen computation or consistency request cannot be served."""


@dataclass(frozen=True)
class PriorityVector:
    context: str
    elements: tuple[str, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.elements) != len(self.weights):
            raise PriorityError(f"{self.context}: element/weight length mismatch")
        if any(w < 0 for w in self.weights):
            raise PriorityError(f"{self.context}: negative weight")
        if abs(sum(self.weights) - 1.0) > 1e-12:
            raise PriorityError(f"{self.context}: weights sum to {sum(self.weights)}, not 1")

    def weight_of(self, element_id: str) -> float:
        return self.weights[self.elements.index(element_id)]

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.elements, self.weights))


@dataclass(frozen=True)
class ConsistencyReport:
    context: str
    n: int
    lambda_max: float
    ci: float
    cr: float
    ri: float

    @property
    def acceptable(self) -> bool:
        return self.cr <= CR_THRESHOLD


def principal_eigenvector(
    matrix: ComparisonMatrix, tol: float = 1e-12, max_iter: int = 1000
) -> tuple[PriorityVector, float]:
    """Power iteration from the uniform vector, sum-normalized each step.

    Converges when successive normalized iterates differ by < tol in
    max-norm; lambda_max is the mean component-wise Rayleigh ratio
    (Av)_i / v_i at the converged vector.  Positive matrices always
    converge (Perron-Frobenius); the iteration cap is a guard only.
    """
    if tol <= 0:
        raise PriorityError("tol must be positive")
    a = matrix.as_array()
    n = matrix.n
    if n == 1:
        return PriorityVector(matrix.context, matrix.elements, (1.0,)), 1.0
    v = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        av = a @ v
        nxt = av / av.sum()
        if np.max(np.abs(nxt - v)) < tol:
            v = nxt
            break
        v = nxt
    else:
        raise PriorityError(
            f"{matrix.context}: power iteration did not converge in {max_iter} steps"
        )
    av = a @ v
    lambda_max = float(np.mean(av / v))
    weights = v / v.sum()
    # guard against signed-zero / rounding residue in the sum invariant
    weights = tuple(float(w) for w in weights / weights.sum())
    return PriorityVector(matrix.context, matrix.elements, weights), lambda_max


def consistency(matrix: ComparisonMatrix, tol: float = 1e-12, max_iter: int = 1000) -> ConsistencyReport:
    """CI = (lambda_max - n)/(n - 1), CR = CI/RI(n); both 0 for n <= 2."""
    n = matrix.n
    if n > len(RANDOM_INDEX):
        raise PriorityError(f"no random index for n = {n} (supported up to {len(RANDOM_INDEX)})")
    _, lambda_max = principal_eigenvector(matrix, tol=tol, max_iter=max_iter)
    ri = RANDOM_INDEX[n - 1]
    if n <= 2:
        return ConsistencyReport(matrix.context, n, lambda_max, 0.0, 0.0, ri)
    ci = (lambda_max - n) / (n - 1)
    return ConsistencyReport(matrix.context, n, lambda_max, ci, ci / ri, ri)


def most_inconsistent_judgment(
    matrix: ComparisonMatrix, priorities: PriorityVector
) -> tuple[str, str, float]:
    """Pair (i < j) with the largest |ln a[i][j] - ln(w_i / w_j)|.

    Powers the elicitation hint: this is the judgment whose revision
    moves the matrix towards consistency fastest.
    """
    n = matrix.n
    if n < 3:
        raise PriorityError("nothing to revise: matrices of order < 3 are always consistent")
    a = matrix.as_array()
    w = np.asarray(priorities.weights)
    best = None
    for i in range(n):
        for j in range(i + 1, n):
            dev = abs(math.log(a[i, j]) - math.log(w[i] / w[j]))
            if best is None or dev > best[2]:
                best = (matrix.elements[i], matrix.elements[j], dev)
    return best
