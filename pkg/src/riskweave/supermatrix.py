"""Supermatrix assembly, column-stochastic weighting, and limiting.

Entry m[i][j] is the priority of element i in the context whose column
is j.  Raising the weighted (column-stochastic) matrix to high powers
distributes influence through the dependency structure; the alternative
rows of the goal column of the limit carry the synthesized weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from riskweave.model import DecisionNetwork, comparison_contexts
from riskweave.priority import PriorityVector

UNWEIGHTED = "unweighted"
WEIGHTED = "weighted"
LIMIT = "limit"


class SupermatrixError(ValueError):
    """Assembly, weighting, or limiting cannot proceed."""


@dataclass(eq=False)
class Supermatrix:
    index: tuple[str, ...]           # element ids, declaration order
    clusters: tuple[str, ...]        # owning cluster id per element
    entries: np.ndarray
    stage: str

    def __post_init__(self):
        n = len(self.index)
        if self.entries.shape != (n, n):
            raise SupermatrixError(f"entries must be {n}x{n}, got {self.entries.shape}")
        if len(self.clusters) != n:
            raise SupermatrixError("cluster tags must parallel the element index")
        if (self.entries < 0).any():
            raise SupermatrixError("negative supermatrix entry")
        self.entries.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.index)

    def column(self, element_id: str) -> np.ndarray:
        return self.entries[:, self.index.index(element_id)]

    def replace(self, entries: np.ndarray, stage: str) -> "Supermatrix":
        return Supermatrix(self.index, self.clusters, entries, stage)


def assemble_unweighted(
    network: DecisionNetwork, priorities: Mapping[str, PriorityVector]
) -> Supermatrix:
    """Place every element-level priority vector into its column.

    Single-element contexts default to the implicit unit priority;
    any other context without a vector is an error naming it.
    """
    index = network.element_ids()
    pos = {eid: k for k, eid in enumerate(index)}
    clusters = tuple(network.cluster_of(eid).id for eid in index)
    m = np.zeros((len(index), len(index)))

    for ctx in comparison_contexts(network):
        if ctx.column is None:
            continue
        vector = priorities.get(ctx.id)
        if vector is None:
            if ctx.n == 1:
                vector = PriorityVector(ctx.id, ctx.compared, (1.0,))
            else:
                raise SupermatrixError(f"missing priority vector for context {ctx.id}")
        if tuple(vector.elements) != ctx.compared:
            raise SupermatrixError(
                f"priority vector for {ctx.id} orders elements differently from the context"
            )
        col = pos[ctx.column]
        for eid, w in zip(vector.elements, vector.weights):
            row = pos[eid]
            if m[row, col] != 0.0:
                raise SupermatrixError(
                    f"cell ({eid}, {ctx.column}) written by two contexts"
                )
            m[row, col] = w

    return Supermatrix(index, clusters, m, UNWEIGHTED)


def cluster_weight_matrix(
    network: DecisionNetwork,
    priorities: Mapping[str, PriorityVector],
    alternatives_share: float = 0.5,
) -> dict[str, dict[str, float]]:
    """Block weights per column cluster, from the cluster-level vectors.

    The goal column weights its criteria blocks by the criteria-vs-goal
    priorities.  A criteria column splits between its feedback blocks
    (apportioned by that cluster's inner-dependence priorities) and the
    alternatives block; with no inner dependence the alternatives block
    takes the full weight.  `alternatives_share` sets the feedback vs
    options split where both are present.
    """
    if not 0.0 < alternatives_share < 1.0:
        raise SupermatrixError("alternatives_share must be in (0, 1)")
    weights: dict[str, dict[str, float]] = {}
    goal = network.goal_cluster
    alt = network.alternatives_cluster

    for ctx in comparison_contexts(network):
        if ctx.kind != "cluster_weights":
            continue
        vector = priorities.get(ctx.id)
        if vector is None:
            if ctx.n == 1:
                vector = PriorityVector(ctx.id, ctx.compared, (1.0,))
            else:
                raise SupermatrixError(f"missing priority vector for context {ctx.id}")
        if ctx.id == "criteria-vs-goal":
            weights[goal.id] = dict(zip(vector.elements, vector.weights))
        else:
            weights[ctx.control] = {
                cid: w * (1.0 - alternatives_share)
                for cid, w in zip(vector.elements, vector.weights)
            }
            weights[ctx.control][alt.id] = alternatives_share

    for c in network.criteria_clusters:
        weights.setdefault(c.id, {})[alt.id] = weights.get(c.id, {}).get(alt.id, 1.0)
    return weights


def weight_and_normalize(
    super_: Supermatrix, cluster_weights: Mapping[str, Mapping[str, float]] | None = None
) -> Supermatrix:
    """Scale each block by its cluster weight, then normalize columns to 1.

    With `cluster_weights=None` every block weighs 1 and the step reduces
    to column normalization.  Columns that end up all-zero (sinks, e.g.
    the alternatives under a hierarchy) take the identity column so the
    result is fully column-stochastic.
    """
    m = super_.entries.astype(float).copy()
    n = super_.n
    for col in range(n):
        col_cluster = super_.clusters[col]
        block_weights = None if cluster_weights is None else cluster_weights.get(col_cluster)
        for row in range(n):
            if m[row, col] == 0.0:
                continue
            if block_weights is None:
                factor = 1.0
            else:
                row_cluster = super_.clusters[row]
                if row_cluster not in block_weights:
                    raise SupermatrixError(
                        f"no cluster weight for block ({row_cluster} -> {col_cluster}) "
                        f"with nonzero entries"
                    )
                factor = float(block_weights[row_cluster])
            if factor < 0:
                raise SupermatrixError(
                    f"negative cluster weight for block in column {super_.index[col]}"
                )
            m[row, col] *= factor
        s = m[:, col].sum()
        if s > 0:
            m[:, col] /= s
        elif super_.entries[:, col].sum() > 0:
            raise SupermatrixError(
                f"column {super_.index[col]} is nonzero but cannot be normalized "
                f"(all blocks weighted to zero)"
            )
        else:
            m[col, col] = 1.0
    return super_.replace(m, WEIGHTED)


def limit(super_: Supermatrix, tol: float = 1e-10, max_pow: int = 10**6) -> Supermatrix:
    """Limit matrix by repeated squaring, with period-2 Cesaro fallback.

    Squares until successive powers differ by < tol in max-norm.  If the
    even-power sequence stabilizes at A while A and A*M keep disagreeing
    but A*M*M returns to A, the chain is 2-periodic and the Cesaro
    average (A + A*M)/2 is returned.
    """
    m = super_.entries.astype(float)
    if not np.allclose(m.sum(axis=0), 1.0, atol=1e-8):
        raise SupermatrixError("limit requires a column-stochastic matrix")
    prev = m
    cur = m @ m
    power = 2
    while power <= max_pow:
        if np.max(np.abs(cur - prev)) < tol:
            odd = cur @ m
            if np.max(np.abs(odd - cur)) < tol:
                return super_.replace(cur, LIMIT)
            if np.max(np.abs(odd @ m - cur)) < tol:
                return super_.replace((cur + odd) / 2.0, LIMIT)
        prev = cur
        cur = cur @ cur
        power *= 2
    residual = float(np.max(np.abs(cur - prev)))
    raise SupermatrixError(
        f"no convergence and no 2-cycle up to power {power // 2} "
        f"(last residual {residual:.3e}, tol {tol:.1e})"
    )


@dataclass(frozen=True)
class SynthesizedPriorities:
    alternatives: tuple[str, ...]
    raw: tuple[float, ...]
    normals: tuple[float, ...]
    ideals: tuple[float, ...]

    def normal_of(self, alternative_id: str) -> float:
        return self.normals[self.alternatives.index(alternative_id)]


def synthesize_alternatives(
    limit_super: Supermatrix, network: DecisionNetwork
) -> SynthesizedPriorities:
    """Read the alternative rows of the goal column; normalize and idealize."""
    if limit_super.stage != LIMIT:
        raise SupermatrixError(f"synthesis needs a limit matrix, got stage {limit_super.stage}")
    alt_ids = network.alternatives_cluster.element_ids()
    goal_col = limit_super.column(network.goal_element.id)
    raw = tuple(float(goal_col[limit_super.index.index(a)]) for a in alt_ids)
    total = sum(raw)
    if total <= 0:
        raise SupermatrixError("alternatives receive zero weight: model never connects to them")
    normals = tuple(r / total for r in raw)
    peak = max(raw)
    ideals = tuple(r / peak for r in raw)
    return SynthesizedPriorities(alt_ids, raw, normals, ideals)
