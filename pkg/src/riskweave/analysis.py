"""Comparative analytics: classic FMEA vs the ANP-weighted ranking.

Rank-shift sign convention: positive shift = the item became MORE
critical under the weighted method (its rank number decreased).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from riskweave.fmea import FmeaError, RiskRecord


class AnalysisError(ValueError):
    """Mismatched record sets or degenerate inputs."""


@dataclass(frozen=True)
class ComparisonRow:
    cause: str
    rpn_classic: int
    rpn_weighted: float
    rank_classic: int
    rank_weighted: int

    @property
    def rank_shift(self) -> int:
        return self.rank_classic - self.rank_weighted


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple[ComparisonRow, ...]
    tie_groups_classic: tuple[tuple[int, int], ...]   # (shared rank, group size >= 2)
    tie_groups_weighted: tuple[tuple[int, int], ...]
    weighted_exceeds_classic: int
    rank_correlation: float


def tie_groups(ranks: Sequence[int]) -> tuple[tuple[int, int], ...]:
    """Ranks shared by two or more items, with group sizes."""
    counts: dict[int, int] = {}
    for r in ranks:
        counts[r] = counts.get(r, 0) + 1
    return tuple((r, c) for r, c in sorted(counts.items()) if c >= 2)


def _midranks(values: Sequence[float]) -> np.ndarray:
    """Average ranks (1-based) with midpoints for ties."""
    v = np.asarray(values, dtype=float)
    order = np.argsort(-v, kind="stable")
    ranks = np.empty(len(v))
    i = 0
    while i < len(v):
        j = i
        while j + 1 < len(v) and v[order[j + 1]] == v[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Spearman's rho with midpoint tie correction."""
    if len(x) != len(y) or len(x) < 2:
        raise AnalysisError("correlation needs two equally long sequences of >= 2 values")
    rx, ry = _midranks(x), _midranks(y)
    sx, sy = rx.std(), ry.std()
    if sx == 0 or sy == 0:
        return 1.0 if np.array_equal(rx, ry) else float("nan")
    return float(np.corrcoef(rx, ry)[0, 1])


def compare(
    classic_records: Sequence[RiskRecord], weighted_records: Sequence[RiskRecord]
) -> ComparisonReport:
    """Row-wise join of the two rankings plus aggregate statistics.

    Competition ranks are kept as published; the correlation uses
    midpoint-corrected ranks on the raw RPN columns.
    """
    by_cause = {r.item.cause: r for r in weighted_records}
    if {r.item.cause for r in classic_records} != set(by_cause) or len(by_cause) != len(
        weighted_records
    ):
        raise AnalysisError("classic and weighted record sets name different items")

    rows = []
    for c in classic_records:
        w = by_cause[c.item.cause]
        if c.rank_classic is None or w.rank_weighted is None:
            raise AnalysisError(f"{c.item.cause}: records must be ranked before comparison")
        rows.append(
            ComparisonRow(
                cause=c.item.cause,
                rpn_classic=c.rpn_classic,
                rpn_weighted=w.rpn_weighted,
                rank_classic=c.rank_classic,
                rank_weighted=w.rank_weighted,
            )
        )

    return ComparisonReport(
        rows=tuple(rows),
        tie_groups_classic=tie_groups([r.rank_classic for r in rows]),
        tie_groups_weighted=tie_groups([r.rank_weighted for r in rows]),
        weighted_exceeds_classic=sum(1 for r in rows if r.rpn_weighted > r.rpn_classic),
        rank_correlation=spearman(
            [r.rpn_classic for r in rows], [r.rpn_weighted for r in rows]
        ),
    )


def largest_shifts(report: ComparisonReport, k: int) -> list[ComparisonRow]:
    """Top-k rows by absolute rank shift; ties keep declaration order."""
    if k < 1:
        raise AnalysisError("k must be >= 1")
    indexed = list(enumerate(report.rows))
    indexed.sort(key=lambda p: (-abs(p[1].rank_shift), p[0]))
    return [row for _, row in indexed[:k]]


@dataclass(frozen=True)
class ResponseMatrix:
    """Respondents x items answer matrix for reliability analysis."""

    values: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if len(self.values) < 2:
            raise AnalysisError("need at least 2 respondents")
        k = len(self.values[0])
        if k < 2 or any(len(r) != k for r in self.values):
            raise AnalysisError("need a rectangular matrix with at least 2 items")
        if not np.isfinite(np.asarray(self.values, dtype=float)).all():
            raise AnalysisError("missing or non-finite cells")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


def cronbach_alpha(responses: ResponseMatrix | Sequence[Sequence[float]]) -> float:
    """alpha = k/(k-1) * (1 - sum of item variances / total-score variance).

    Sample variances (n-1 denominator).  Zero total-score variance makes
    the coefficient undefined and raises.
    """
    if not isinstance(responses, ResponseMatrix):
        responses = ResponseMatrix(tuple(tuple(float(v) for v in row) for row in responses))
    a = responses.as_array()
    k = a.shape[1]
    item_var = a.var(axis=0, ddof=1).sum()
    total_var = a.sum(axis=1).var(ddof=1)
    if total_var == 0:
        raise AnalysisError("total-score variance is zero: alpha undefined")
    return float(k / (k - 1) * (1 - item_var / total_var))
