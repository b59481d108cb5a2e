"""Decision network: goal, criteria clusters, alternatives, dependencies.

A `DependencyEdge` source -> target reads "source is judged over target":
the source node's supermatrix column receives a priority vector over the
targets.  Cluster-level edges drive cluster comparisons and the presence
of element blocks; element-level edges drive per-element inner-dependence
comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from riskweave.judgments import ComparisonContext

GOAL = "goal"
CRITERIA = "criteria"
ALTERNATIVES = "alternatives"
KINDS = (GOAL, CRITERIA, ALTERNATIVES)


class ModelError(ValueError):
    """Structurally invalid network definition."""


@dataclass(frozen=True)
class Element:
    id: str
    label: str


@dataclass(frozen=True)
class Cluster:
    id: str
    kind: str
    elements: tuple[Element, ...]
    label: str = ""

    def element_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.elements)


@dataclass(frozen=True)
class DependencyEdge:
    source: str
    target: str
    level: str  # "cluster" | "element"


@dataclass(frozen=True)
class DecisionNetwork:
    name: str
    description: str
    clusters: tuple[Cluster, ...]
    edges: tuple[DependencyEdge, ...]

    # --- lookups (declaration order everywhere) ---

    def cluster(self, cluster_id: str) -> Cluster:
        for c in self.clusters:
            if c.id == cluster_id:
                return c
        raise ModelError(f"unknown cluster {cluster_id}")

    @property
    def goal_cluster(self) -> Cluster:
        return next(c for c in self.clusters if c.kind == GOAL)

    @property
    def alternatives_cluster(self) -> Cluster:
        return next(c for c in self.clusters if c.kind == ALTERNATIVES)

    @property
    def criteria_clusters(self) -> tuple[Cluster, ...]:
        return tuple(c for c in self.clusters if c.kind == CRITERIA)

    @property
    def goal_element(self) -> Element:
        return self.goal_cluster.elements[0]

    def element_ids(self) -> tuple[str, ...]:
        return tuple(e.id for c in self.clusters for e in c.elements)

    def element(self, element_id: str) -> Element:
        for c in self.clusters:
            for e in c.elements:
                if e.id == element_id:
                    return e
        raise ModelError(f"unknown element {element_id}")

    def cluster_of(self, element_id: str) -> Cluster:
        for c in self.clusters:
            if element_id in c.element_ids():
                return c
        raise ModelError(f"unknown element {element_id}")

    def cluster_edges_from(self, cluster_id: str) -> tuple[str, ...]:
        """Targets of cluster-level edges, ordered by cluster declaration."""
        targets = {e.target for e in self.edges if e.level == "cluster" and e.source == cluster_id}
        return tuple(c.id for c in self.clusters if c.id in targets)

    def element_edges_from(self, element_id: str) -> tuple[str, ...]:
        """Targets of element-level edges, ordered by element declaration."""
        targets = {e.target for e in self.edges if e.level == "element" and e.source == element_id}
        return tuple(eid for eid in self.element_ids() if eid in targets)


def _as_element(spec) -> Element:
    if isinstance(spec, str):
        return Element(spec, spec)
    if isinstance(spec, dict):
        eid = spec.get("id")
        if not eid or not isinstance(eid, str):
            raise ModelError(f"element id missing or not a string: {spec!r}")
        return Element(eid, spec.get("label") or eid)
    raise ModelError(f"element spec must be a string or object, got {type(spec).__name__}")


def build_network(definition: dict) -> DecisionNetwork:
    """Validate a structured definition into an immutable network.

    Errors: duplicate id, dangling edge endpoint, missing goal or
    alternatives cluster, empty clusters, element edges between
    unconnected clusters.
    """
    clusters = []
    for cspec in definition.get("clusters", []):
        kind = cspec.get("kind")
        if kind not in KINDS:
            raise ModelError(f"cluster {cspec.get('id')!r}: unknown kind {kind!r}")
        elements = tuple(_as_element(e) for e in cspec.get("elements", []))
        if not elements:
            raise ModelError(f"cluster {cspec.get('id')!r}: empty cluster")
        clusters.append(
            Cluster(cspec["id"], kind, elements, cspec.get("label") or cspec["id"])
        )

    goals = [c for c in clusters if c.kind == GOAL]
    alts = [c for c in clusters if c.kind == ALTERNATIVES]
    if len(goals) != 1:
        raise ModelError(f"exactly one goal cluster required, found {len(goals)}")
    if len(alts) != 1:
        raise ModelError(f"exactly one alternatives cluster required, found {len(alts)}")
    if len(goals[0].elements) != 1:
        raise ModelError("goal cluster must hold exactly one element (the objective)")
    if len(alts[0].elements) < 2:
        raise ModelError("alternatives cluster needs at least 2 elements")

    ids: set[str] = set()
    for c in clusters:
        if c.id in ids:
            raise ModelError(f"duplicate id {c.id!r}")
        ids.add(c.id)
        for e in c.elements:
            if e.id in ids:
                raise ModelError(f"duplicate id {e.id!r}")
            ids.add(e.id)

    cluster_ids = {c.id for c in clusters}
    element_cluster = {e.id: c.id for c in clusters for e in c.elements}

    edges = []
    for espec in definition.get("edges", []):
        level = espec.get("level")
        src, tgt = espec.get("source"), espec.get("target")
        if level == "cluster":
            for endpoint in (src, tgt):
                if endpoint not in cluster_ids:
                    raise ModelError(f"dangling edge endpoint {endpoint!r} (cluster level)")
        elif level == "element":
            for endpoint in (src, tgt):
                if endpoint not in element_cluster:
                    raise ModelError(f"dangling edge endpoint {endpoint!r} (element level)")
        else:
            raise ModelError(f"edge {src!r}->{tgt!r}: level must be cluster or element")
        edges.append(DependencyEdge(src, tgt, level))

    cluster_pairs = {(e.source, e.target) for e in edges if e.level == "cluster"}
    for e in edges:
        if e.level == "element":
            cs, ct = element_cluster[e.source], element_cluster[e.target]
            if cs != ct and (cs, ct) not in cluster_pairs:
                raise ModelError(
                    f"element edge {e.source}->{e.target} spans unconnected clusters {cs}->{ct}"
                )

    network = DecisionNetwork(
        name=definition.get("name", ""),
        description=definition.get("description", ""),
        clusters=tuple(clusters),
        edges=tuple(edges),
    )

    # reachability: criteria must feed the alternatives somewhere
    alt_id = network.alternatives_cluster.id
    if not any(e.level == "cluster" and e.target == alt_id for e in network.edges):
        raise ModelError("no path from criteria to alternatives: nothing compares the options")
    return network


def serialize_network(network: DecisionNetwork) -> dict:
    return {
        "name": network.name,
        "description": network.description,
        "clusters": [
            {
                "id": c.id,
                "kind": c.kind,
                "label": c.label,
                "elements": [{"id": e.id, "label": e.label} for e in c.elements],
            }
            for c in network.clusters
        ],
        "edges": [
            {"source": e.source, "target": e.target, "level": e.level} for e in network.edges
        ],
    }


def comparison_contexts(network: DecisionNetwork) -> list[ComparisonContext]:
    """Derive every comparison context implied by the dependency structure.

    Emission order is deterministic: cluster comparisons under the goal,
    cluster inner dependence, each cluster's local element comparisons,
    element inner dependence, then option preferences per element.
    Contexts with a single compared item carry an implicit unit priority
    and need no judgments.
    """
    contexts: list[ComparisonContext] = []
    goal_cluster = network.goal_cluster
    goal_element = network.goal_element
    alt_cluster = network.alternatives_cluster

    def labels(ids: tuple[str, ...], of_clusters: bool) -> tuple[str, ...]:
        if of_clusters:
            return tuple(network.cluster(i).label for i in ids)
        return tuple(network.element(i).label for i in ids)

    goal_targets = tuple(
        cid for cid in network.cluster_edges_from(goal_cluster.id)
        if network.cluster(cid).kind == CRITERIA
    )
    if goal_targets:
        contexts.append(
            ComparisonContext(
                id="criteria-vs-goal",
                kind="cluster_weights",
                control=goal_cluster.id,
                compared=goal_targets,
                column=None,
                control_label=goal_cluster.label,
                compared_labels=labels(goal_targets, of_clusters=True),
            )
        )

    for c in network.criteria_clusters:
        dep_targets = tuple(
            cid for cid in network.cluster_edges_from(c.id)
            if network.cluster(cid).kind == CRITERIA
        )
        if dep_targets:
            contexts.append(
                ComparisonContext(
                    id=f"criteria-dep:{c.id}",
                    kind="cluster_weights",
                    control=c.id,
                    compared=dep_targets,
                    column=None,
                    control_label=c.label,
                    compared_labels=labels(dep_targets, of_clusters=True),
                )
            )

    for c in network.criteria_clusters:
        if c.id not in network.cluster_edges_from(goal_cluster.id):
            continue
        contexts.append(
            ComparisonContext(
                id=f"subcriteria:{c.id}",
                kind="local_priorities",
                control=c.id,
                compared=c.element_ids(),
                column=goal_element.id,
                control_label=c.label,
                compared_labels=labels(c.element_ids(), of_clusters=False),
            )
        )

    for c in network.criteria_clusters:
        for e in c.elements:
            targets = network.element_edges_from(e.id)
            if targets:
                contexts.append(
                    ComparisonContext(
                        id=f"inner:{e.id}",
                        kind="element_dependence",
                        control=e.id,
                        compared=targets,
                        column=e.id,
                        control_label=e.label,
                        compared_labels=labels(targets, of_clusters=False),
                    )
                )

    alt_ids = alt_cluster.element_ids()
    for c in network.criteria_clusters:
        if alt_cluster.id not in network.cluster_edges_from(c.id):
            continue
        for e in c.elements:
            contexts.append(
                ComparisonContext(
                    id=f"options:{e.id}",
                    kind="options",
                    control=e.id,
                    compared=alt_ids,
                    column=e.id,
                    control_label=e.label,
                    compared_labels=labels(alt_ids, of_clusters=False),
                )
            )

    return contexts
