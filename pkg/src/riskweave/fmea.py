"""FMEA rating scales, classic and exponent-weighted risk priority numbers.

The weighted RPN raises each rating to an exponent derived from the
synthesized alternative priorities (normal * 3), so equal priorities
reproduce the classic S*O*D exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from riskweave.supermatrix import SynthesizedPriorities


class FmeaError(ValueError):
    """Invalid ratings, weights, or unrecoverable RPN pair."""


@dataclass(frozen=True)
class RatingLevel:
    rank: int
    label: str
    description: str


SEVERITY_SCALE: tuple[RatingLevel, ...] = (
    RatingLevel(1, "None", "No effect"),
    RatingLevel(2, "Very Minor", "Very minor effects"),
    RatingLevel(3, "Minor", "Causes minor effects"),
    RatingLevel(4, "Very Low", "Very low severity, noticed by most"),
    RatingLevel(5, "Low", "Low severity"),
    RatingLevel(6, "Moderate", "Moderate severity"),
    RatingLevel(7, "High", "High severity"),
    RatingLevel(8, "Very High", "Irrecoverable severity"),
    RatingLevel(9, "Hazardous - Warning", "Extremely severe, with warning"),
    RatingLevel(10, "Hazardous - No Warning", "Extremely severe, catastrophic, no warning"),
)

OCCURRENCE_SCALE: tuple[RatingLevel, ...] = (
    RatingLevel(1, "Remote", "Highly improbable: less than 1 in 15,000,000"),
    RatingLevel(2, "Low", "1 in 1,500,000"),
    RatingLevel(3, "Low", "Relatively rare: 1 in 15,000"),
    RatingLevel(4, "Moderate", "1 in 2,000"),
    RatingLevel(5, "Moderate", "1 in 400"),
    RatingLevel(6, "Moderate", "Occasional: 1 in 80"),
    RatingLevel(7, "High", "1 in 20"),
    RatingLevel(8, "High", "Repeating: 1 in 8"),
    RatingLevel(9, "Very High", "1 in 3"),
    RatingLevel(10, "Very High - Almost Inevitable", "1 in 2 or more"),
)

DETECTION_SCALE: tuple[RatingLevel, ...] = (
    RatingLevel(1, "Almost Certain", "Controls almost certainly detect the risk"),
    RatingLevel(2, "Very Likely", "Detection highly likely"),
    RatingLevel(3, "Likely", "Detection very likely"),
    RatingLevel(4, "Relatively Likely", "Detection relatively likely"),
    RatingLevel(5, "Moderate", "Detected in about half of the cases"),
    RatingLevel(6, "Low", "Low likelihood of detection"),
    RatingLevel(7, "Very Low", "Very low likelihood of detection"),
    RatingLevel(8, "Unlikely", "Detection highly unlikely"),
    RatingLevel(9, "Very Unlikely", "Detection very unlikely even with controls"),
    RatingLevel(10, "Absolutely None", "No controls, or controls cannot detect"),
)


@dataclass(frozen=True)
class FmeaItem:
    failure_mode: str  # owning cluster name
    cause: str         # element id of the failure cause
    severity: int
    occurrence: int
    detection: int

    def __post_init__(self):
        for name in ("severity", "occurrence", "detection"):
            v = getattr(self, name)
            if not isinstance(v, int) or not 1 <= v <= 10:
                raise FmeaError(f"{self.cause}: {name} rating {v!r} outside 1..10")


@dataclass(frozen=True)
class ExponentWeights:
    severity: float
    occurrence: float
    detection: float

    def __post_init__(self):
        if min(self.severity, self.occurrence, self.detection) <= 0:
            raise FmeaError("exponent weights must be positive")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.severity, self.occurrence, self.detection)


NEUTRAL_WEIGHTS = ExponentWeights(1.0, 1.0, 1.0)

# Parameter weights as printed alongside the worked example (the normals
# rounded to 2 decimals, times 3).
PUBLISHED_WEIGHTS = ExponentWeights(1.65, 0.69, 0.66)


@dataclass(frozen=True)
class RiskRecord:
    item: FmeaItem
    rpn_classic: int
    rpn_weighted: float
    rank_classic: int | None = None
    rank_weighted: int | None = None


def correct_weights(normals: SynthesizedPriorities | Sequence[float]) -> ExponentWeights:
    """Exponents = normalized priorities * 3 (the parameter count).

    The alternatives order is taken as (severity, occurrence, detection);
    equal normals of 1/3 give the neutral exponents (1, 1, 1).
    """
    values = normals.normals if isinstance(normals, SynthesizedPriorities) else tuple(normals)
    if len(values) != 3:
        raise FmeaError(f"need exactly 3 parameter priorities, got {len(values)}")
    if min(values) <= 0:
        raise FmeaError("nonpositive parameter priority")
    if abs(sum(values) - 1.0) > 1e-9:
        raise FmeaError(f"parameter priorities sum to {sum(values)}, not 1")
    return ExponentWeights(*(3.0 * v for v in values))


def classic_rpn(item: FmeaItem) -> int:
    return item.severity * item.occurrence * item.detection


def weighted_rpn(item: FmeaItem, weights: ExponentWeights) -> float:
    return (
        item.severity ** weights.severity
        * item.occurrence ** weights.occurrence
        * item.detection ** weights.detection
    )


# all 1000 rating triples, for exhaustive recovery
_S, _O, _D = (g.ravel() for g in np.meshgrid(
    np.arange(1, 11), np.arange(1, 11), np.arange(1, 11), indexing="ij"
))
_PRODUCTS = _S * _O * _D


def recover_sod(
    rpn_classic_value: float, rpn_weighted_value: float, weights: ExponentWeights
) -> list[tuple[int, int, int]]:
    """All rating triples consistent with a published (classic, weighted) pair.

    Exhaustive search over the 1000 triples: keep those whose product is
    the classic RPN, then those minimizing the relative weighted-RPN
    error; ties are all returned.
    """
    if rpn_weighted_value <= 0:
        raise FmeaError("weighted RPN must be positive")
    mask = _PRODUCTS == int(round(rpn_classic_value))
    if not mask.any():
        raise FmeaError(f"no rating triple has product {rpn_classic_value}")
    s, o, d = _S[mask], _O[mask], _D[mask]
    scored = (
        s ** weights.severity * o ** weights.occurrence * d ** weights.detection
    )
    rel = np.abs(scored - rpn_weighted_value) / rpn_weighted_value
    best = rel.min()
    hits = np.flatnonzero(rel <= best + 1e-12)
    return [(int(s[k]), int(o[k]), int(d[k])) for k in hits]


def score_items(items: Iterable[FmeaItem], weights: ExponentWeights) -> list[RiskRecord]:
    return [
        RiskRecord(item, classic_rpn(item), weighted_rpn(item, weights)) for item in items
    ]


def rank(records: Sequence[RiskRecord], key: str) -> list[RiskRecord]:
    """Competition ranking ("1224"), descending RPN.

    Ties share the best rank of their block; the next distinct value's
    rank is 1 + the count of strictly greater records.  Classic RPNs are
    integers and tie on exact equality; weighted RPNs tie within 1e-9
    relative tolerance.
    """
    if not records:
        raise FmeaError("nothing to rank")
    if key == "classic":
        values = [r.rpn_classic for r in records]
        greater = lambda u, v: u > v
    elif key == "weighted":
        values = [r.rpn_weighted for r in records]
        greater = lambda u, v: (u - v) > 1e-9 * max(abs(u), abs(v))
    else:
        raise FmeaError(f"unknown ranking key {key!r}")
    out = []
    for rec, v in zip(records, values):
        r = 1 + sum(1 for u in values if greater(u, v))
        out.append(replace(rec, **{f"rank_{key}": r}))
    return out
