"""Full solving pipeline: priorities -> supermatrix -> limit -> RPN ranking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from riskweave.analysis import ComparisonReport, compare
from riskweave.fmea import ExponentWeights, RiskRecord, correct_weights, rank, score_items
from riskweave.judgments import Judgment, completeness, matrix_from_judgments
from riskweave.priority import (
    ConsistencyReport,
    PriorityVector,
    consistency,
    principal_eigenvector,
)
from riskweave.store import LoadedModel, StoreError
from riskweave.supermatrix import (
    Supermatrix,
    SynthesizedPriorities,
    assemble_unweighted,
    cluster_weight_matrix,
    limit,
    synthesize_alternatives,
    weight_and_normalize,
)

WEIGHTS_COMPUTED = "computed"
WEIGHTS_PAPER = "paper"


class IncompleteModelError(ValueError):
    """Judgments missing for one or more contexts; lists the gaps."""

    def __init__(self, gaps: dict[str, list[tuple[str, str]]]):
        self.gaps = gaps
        parts = [f"{ctx} ({len(pairs)} pairs)" for ctx, pairs in gaps.items()]
        super().__init__("incomplete judgments: " + ", ".join(parts))


def missing_pairs(
    model: LoadedModel, judgments: Mapping[str, Iterable[Judgment]] | None = None
) -> dict[str, list[tuple[str, str]]]:
    """Unanswered pairs per context; empty when the model is solvable."""
    source = model.judgments if judgments is None else judgments
    gaps: dict[str, list[tuple[str, str]]] = {}
    for ctx in model.contexts:
        if ctx.n < 2:
            continue
        report = completeness(ctx, tuple(source.get(ctx.id, ())))
        if report.missing:
            gaps[ctx.id] = list(report.missing)
    return gaps


@dataclass(frozen=True)
class PipelineResult:
    priorities: dict[str, PriorityVector]
    consistency: list[ConsistencyReport]
    unweighted: Supermatrix
    weighted: Supermatrix
    limit_matrix: Supermatrix
    synthesized: SynthesizedPriorities
    weights_source: str
    normals_used: tuple[float, float, float]
    exponents: ExponentWeights
    records: list[RiskRecord]
    report: ComparisonReport | None


def priorities_and_consistency(
    model: LoadedModel, judgments: Mapping[str, Iterable[Judgment]] | None = None
) -> tuple[dict[str, PriorityVector], list[ConsistencyReport]]:
    """Eigenvector priorities and CR diagnostics for every judged context."""
    gaps = missing_pairs(model, judgments)
    if gaps:
        raise IncompleteModelError(gaps)
    source = model.judgments if judgments is None else judgments
    priorities: dict[str, PriorityVector] = {}
    reports: list[ConsistencyReport] = []
    for ctx in model.contexts:
        if ctx.n == 1:
            priorities[ctx.id] = PriorityVector(ctx.id, ctx.compared, (1.0,))
            continue
        matrix = matrix_from_judgments(ctx, tuple(source.get(ctx.id, ())))
        vector, _ = principal_eigenvector(matrix)
        priorities[ctx.id] = vector
        reports.append(consistency(matrix))
    return priorities, reports


def solve(
    model: LoadedModel,
    weights_source: str = WEIGHTS_COMPUTED,
    judgments: Mapping[str, Iterable[Judgment]] | None = None,
    alternatives_share: float = 0.5,
) -> PipelineResult:
    """Run the whole pipeline on a complete model.

    `weights_source="paper"` keeps the supermatrix stages but takes the
    parameter normals from the document's published figures instead of
    the limit synthesis (for models whose printed inputs cannot fully
    regenerate the published limit).
    """
    priorities, reports = priorities_and_consistency(model, judgments)

    unweighted = assemble_unweighted(model.network, priorities)
    weights = cluster_weight_matrix(model.network, priorities, alternatives_share)
    weighted = weight_and_normalize(unweighted, weights)
    limit_matrix = limit(weighted)
    synthesized = synthesize_alternatives(limit_matrix, model.network)

    alt_ids = model.network.alternatives_cluster.element_ids()
    if weights_source == WEIGHTS_PAPER:
        if not model.paper_normals:
            raise StoreError("document carries no published normals to override with")
        normals = tuple(model.paper_normals[a] for a in alt_ids)
        total = sum(normals)
        normals = tuple(v / total for v in normals)
    elif weights_source == WEIGHTS_COMPUTED:
        normals = synthesized.normals
    else:
        raise ValueError(f"unknown weights source {weights_source!r}")

    exponents = correct_weights(normals)
    records = score_items(model.fmea_items, exponents)
    report = None
    if records:
        records = rank(rank(records, "classic"), "weighted")
        report = compare(records, records)

    return PipelineResult(
        priorities=priorities,
        consistency=reports,
        unweighted=unweighted,
        weighted=weighted,
        limit_matrix=limit_matrix,
        synthesized=synthesized,
        weights_source=weights_source,
        normals_used=normals,
        exponents=exponents,
        records=records,
        report=report,
    )


def results_payload(model: LoadedModel, result: PipelineResult, log_hash: str | None = None) -> dict:
    """JSON-ready results bundle with stable key ordering."""
    alt_ids = list(result.synthesized.alternatives)
    payload = {
        "model": model.name,
        "weights_source": result.weights_source,
        "alternatives": {
            "ids": alt_ids,
            "raw": [round(v, 9) for v in result.synthesized.raw],
            "normals": [round(v, 9) for v in result.synthesized.normals],
            "ideals": [round(v, 9) for v in result.synthesized.ideals],
        },
        "normals_used": [round(v, 9) for v in result.normals_used],
        "exponents": {
            "severity": round(result.exponents.severity, 9),
            "occurrence": round(result.exponents.occurrence, 9),
            "detection": round(result.exponents.detection, 9),
        },
        "rpn_table": [
            {
                "cause": r.item.cause,
                "failure_mode": r.item.failure_mode,
                "severity": r.item.severity,
                "occurrence": r.item.occurrence,
                "detection": r.item.detection,
                "rpn_classic": r.rpn_classic,
                "rpn_weighted": round(r.rpn_weighted, 4),
                "rank_classic": r.rank_classic,
                "rank_weighted": r.rank_weighted,
            }
            for r in result.records
        ],
        "comparison": None,
        "consistency": [
            {
                "context": c.context,
                "n": c.n,
                "lambda_max": round(c.lambda_max, 9),
                "ci": round(c.ci, 9),
                "cr": round(c.cr, 9),
                "acceptable": c.acceptable,
            }
            for c in result.consistency
        ],
        "provenance": {
            "stages": ["priorities", "supermatrix", "limit", "correction", "rpn", "ranks"],
            "weights_source": result.weights_source,
        },
    }
    if result.report is not None:
        payload["comparison"] = {
            "rows": [
                {
                    "cause": row.cause,
                    "rpn_classic": row.rpn_classic,
                    "rpn_weighted": round(row.rpn_weighted, 4),
                    "rank_classic": row.rank_classic,
                    "rank_weighted": row.rank_weighted,
                    "rank_shift": row.rank_shift,
                }
                for row in result.report.rows
            ],
            "tie_groups_classic": [list(t) for t in result.report.tie_groups_classic],
            "tie_groups_weighted": [list(t) for t in result.report.tie_groups_weighted],
            "weighted_exceeds_classic": result.report.weighted_exceeds_classic,
            "rank_correlation": round(result.report.rank_correlation, 9),
            "shift_sign": "positive shift = more critical under the weighted ranking",
        }
    if log_hash is not None:
        payload["provenance"]["judgment_log_hash"] = log_hash
    return payload
