"""Saaty-scale judgments and positive reciprocal comparison matrices.

Judgment values are exact rationals (`fractions.Fraction`) so that
reciprocity a[i][j] * a[j][i] = 1 holds without floating error; floats
appear only once matrices enter eigen computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

# Fundamental 9-point scale: equality, nine dominance grades and their
# reciprocals (17 distinct values).
SAATY_SCALE: tuple[Fraction, ...] = tuple(
    sorted({Fraction(k) for k in range(1, 10)} | {Fraction(1, k) for k in range(1, 10)})
)

QUESTION_TEMPLATE = "How important is {a} relative to {b} when {control} is controlled?"


class JudgmentError(ValueError):
    """Malformed, incomplete or off-scale judgment data."""


def parse_value(raw) -> Fraction:
    """Parse a judgment value from a Fraction, int, or 'a/b' string."""
    if isinstance(raw, Fraction):
        value = raw
    elif isinstance(raw, int):
        value = Fraction(raw)
    elif isinstance(raw, str):
        try:
            value = Fraction(raw.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise JudgmentError(f"unparseable judgment value {raw!r}") from exc
    else:
        raise JudgmentError(f"unsupported judgment value type {type(raw).__name__}")
    if value <= 0:
        raise JudgmentError(f"nonpositive judgment value {raw!r}")
    return value


def format_value(value: Fraction) -> str:
    return str(value)


@dataclass(frozen=True)
class ComparisonContext:
    """One pairwise-comparison question set.

    `kind` is one of:
      cluster_weights    -- compares clusters; feeds the cluster weight matrix
      local_priorities   -- a cluster's elements; placed in the goal column
      element_dependence -- elements one element depends on; its own column
      options            -- alternatives judged with respect to one element
    `column` names the supermatrix column receiving the priority vector
    (None for cluster-level contexts).
    """

    id: str
    kind: str
    control: str
    compared: tuple[str, ...]
    column: str | None = None
    control_label: str | None = None
    compared_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if len(self.compared) < 1:
            raise JudgmentError(f"context {self.id}: empty compared set")
        if len(set(self.compared)) != len(self.compared):
            raise JudgmentError(f"context {self.id}: duplicate compared ids")

    @property
    def n(self) -> int:
        return len(self.compared)

    @property
    def pairs(self) -> tuple[tuple[str, str], ...]:
        """Upper-triangle pairs in canonical (i < j) order."""
        c = self.compared
        return tuple((c[i], c[j]) for i in range(len(c)) for j in range(i + 1, len(c)))

    def label_of(self, element_id: str) -> str:
        if self.compared_labels is not None and element_id in self.compared:
            return self.compared_labels[self.compared.index(element_id)]
        return element_id

    def question(self, row: str, col: str) -> str:
        return QUESTION_TEMPLATE.format(
            a=self.label_of(row),
            b=self.label_of(col),
            control=self.control_label or self.control,
        )


@dataclass(frozen=True)
class Judgment:
    """One elicited comparison: `row` dominates `col` by `value`."""

    context: str
    row: str
    col: str
    value: Fraction

    def __post_init__(self):
        if self.row == self.col:
            raise JudgmentError(f"judgment compares {self.row} with itself")
        if self.value not in SAATY_SCALE:
            raise JudgmentError(
                f"judgment value {self.value} for ({self.row}, {self.col}) is off the 9-point scale"
            )


@dataclass(frozen=True)
class ComparisonMatrix:
    """Positive reciprocal matrix over a context's compared elements."""

    context: str
    elements: tuple[str, ...]
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.elements)
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise JudgmentError(f"matrix for {self.context} is not {n}x{n}")
        for i in range(n):
            if self.entries[i][i] != 1:
                raise JudgmentError(f"matrix for {self.context}: diagonal entry {i} != 1")
            for j in range(n):
                if self.entries[i][j] <= 0:
                    raise JudgmentError(f"matrix for {self.context}: nonpositive entry ({i},{j})")
                if self.entries[i][j] * self.entries[j][i] != 1:
                    raise JudgmentError(
                        f"matrix for {self.context}: reciprocity broken at ({i},{j})"
                    )

    @property
    def n(self) -> int:
        return len(self.elements)

    def value(self, row: str, col: str) -> Fraction:
        return self.entries[self.elements.index(row)][self.elements.index(col)]

    def as_array(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries], dtype=float)

    @classmethod
    def from_rows(cls, context: str, elements: Sequence[str], rows) -> "ComparisonMatrix":
        entries = tuple(tuple(parse_value(v) for v in row) for row in rows)
        return cls(context, tuple(elements), entries)

    @classmethod
    def from_upper(cls, context: str, elements: Sequence[str], upper) -> "ComparisonMatrix":
        """Build from row-major upper-triangle values (i < j)."""
        n = len(elements)
        vals = [parse_value(v) for v in upper]
        if len(vals) != n * (n - 1) // 2:
            raise JudgmentError(
                f"context {context}: expected {n * (n - 1) // 2} upper-triangle values, got {len(vals)}"
            )
        grid = [[Fraction(1)] * n for _ in range(n)]
        k = 0
        for i in range(n):
            for j in range(i + 1, n):
                grid[i][j] = vals[k]
                grid[j][i] = 1 / vals[k]
                k += 1
        return cls(context, tuple(elements), tuple(tuple(r) for r in grid))


@dataclass(frozen=True)
class CompletenessReport:
    context: str
    answered: int
    missing: tuple[tuple[str, str], ...]
    progress: float


def _keyed(context: ComparisonContext, judgments: Iterable[Judgment]) -> dict:
    """Map canonical (i<j) pairs to oriented values, rejecting duplicates."""
    order = {e: i for i, e in enumerate(context.compared)}
    seen: dict[tuple[str, str], Fraction] = {}
    for j in judgments:
        if j.context != context.id:
            raise JudgmentError(f"judgment for context {j.context} given to {context.id}")
        if j.row not in order or j.col not in order:
            raise JudgmentError(
                f"context {context.id}: judgment names unknown element ({j.row}, {j.col})"
            )
        if order[j.row] < order[j.col]:
            key, value = (j.row, j.col), j.value
        else:
            key, value = (j.col, j.row), 1 / j.value
        if key in seen:
            raise JudgmentError(f"context {context.id}: duplicate judgment for pair {key}")
        seen[key] = value
    return seen


def matrix_from_judgments(
    context: ComparisonContext, judgments: Iterable[Judgment]
) -> ComparisonMatrix:
    """Assemble the reciprocal matrix; every unordered pair must be judged once."""
    seen = _keyed(context, judgments)
    missing = [p for p in context.pairs if p not in seen]
    if missing:
        raise JudgmentError(
            f"context {context.id}: missing judgments for pairs {', '.join(f'({a}, {b})' for a, b in missing)}"
        )
    n = context.n
    grid = [[Fraction(1)] * n for _ in range(n)]
    for (a, b), value in seen.items():
        i, j = context.compared.index(a), context.compared.index(b)
        grid[i][j] = value
        grid[j][i] = 1 / value
    return ComparisonMatrix(context.id, context.compared, tuple(tuple(r) for r in grid))


def completeness(
    context: ComparisonContext, judgments: Iterable[Judgment]
) -> CompletenessReport:
    """Progress report for an elicitation in flight."""
    seen = _keyed(context, judgments)
    missing = tuple(p for p in context.pairs if p not in seen)
    total = len(context.pairs)
    progress = 1.0 if total == 0 else len(seen) / total
    return CompletenessReport(context.id, len(seen), missing, progress)
