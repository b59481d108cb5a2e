import pytest

from riskweave.model import (
    ModelError,
    build_network,
    comparison_contexts,
    serialize_network,
)


def minimal_definition():
    return {
        "name": "minimal",
        "clusters": [
            {"id": "goal", "kind": "goal", "elements": ["objective"]},
            {"id": "c1", "kind": "criteria", "elements": ["crit"]},
            {"id": "alts", "kind": "alternatives", "elements": ["a1", "a2"]},
        ],
        "edges": [
            {"source": "goal", "target": "c1", "level": "cluster"},
            {"source": "c1", "target": "alts", "level": "cluster"},
        ],
    }


class TestBuildNetwork:
    def test_paper_fixture_shape(self, paper_model):
        network = paper_model.network
        assert len(network.criteria_clusters) == 5
        assert sum(len(c.elements) for c in network.criteria_clusters) == 17
        assert network.alternatives_cluster.element_ids() == (
            "severity", "occurrence", "detection"
        )
        assert len(network.element_ids()) == 21

    def test_minimal_network(self):
        network = build_network(minimal_definition())
        assert network.goal_element.id == "objective"
        assert len(network.criteria_clusters) == 1

    def test_dangling_edge(self):
        definition = minimal_definition()
        definition["edges"].append({"source": "crit", "target": "ghost", "level": "element"})
        with pytest.raises(ModelError, match="dangling edge"):
            build_network(definition)

    def test_duplicate_id(self):
        definition = minimal_definition()
        definition["clusters"][1]["elements"] = ["crit", "crit"]
        with pytest.raises(ModelError, match="duplicate id"):
            build_network(definition)

    def test_missing_goal(self):
        definition = minimal_definition()
        definition["clusters"] = definition["clusters"][1:]
        with pytest.raises(ModelError, match="goal cluster"):
            build_network(definition)

    def test_missing_alternatives(self):
        definition = minimal_definition()
        definition["clusters"] = definition["clusters"][:2]
        with pytest.raises(ModelError, match="alternatives cluster"):
            build_network(definition)

    def test_empty_cluster(self):
        definition = minimal_definition()
        definition["clusters"][1]["elements"] = []
        with pytest.raises(ModelError, match="empty cluster"):
            build_network(definition)

    def test_single_alternative_rejected(self):
        definition = minimal_definition()
        definition["clusters"][2]["elements"] = ["only"]
        with pytest.raises(ModelError, match="at least 2"):
            build_network(definition)

    def test_unconnected_alternatives_rejected(self):
        definition = minimal_definition()
        definition["edges"] = definition["edges"][:1]
        with pytest.raises(ModelError, match="path from criteria to alternatives"):
            build_network(definition)

    def test_element_edge_requires_connected_clusters(self):
        definition = minimal_definition()
        definition["clusters"][1]["elements"] = ["crit"]
        definition["clusters"].insert(
            2, {"id": "c2", "kind": "criteria", "elements": ["other"]}
        )
        definition["edges"].append({"source": "crit", "target": "other", "level": "element"})
        with pytest.raises(ModelError, match="unconnected clusters"):
            build_network(definition)

    def test_round_trip(self, paper_doc):
        network = build_network(paper_doc["network"])
        assert build_network(serialize_network(network)) == network


class TestComparisonContexts:
    def test_fixture_context_inventory(self, paper_model):
        contexts = comparison_contexts(paper_model.network)
        ids = [c.id for c in contexts]
        assert len(contexts) == 34
        assert ids[0] == "criteria-vs-goal"
        assert contexts[0].n == 5
        assert sum(1 for c in contexts if c.kind == "options") == 17
        assert sum(1 for c in contexts if c.kind == "element_dependence") == 6
        assert sum(1 for c in contexts if c.kind == "cluster_weights") == 6
        assert sum(1 for c in contexts if c.kind == "local_priorities") == 5

    def test_deterministic(self, paper_doc):
        a = comparison_contexts(build_network(paper_doc["network"]))
        b = comparison_contexts(build_network(paper_doc["network"]))
        assert a == b

    def test_no_inner_dependence_means_no_dependence_contexts(self):
        contexts = comparison_contexts(build_network(minimal_definition()))
        kinds = {c.kind for c in contexts}
        assert "element_dependence" not in kinds
        # 1-way contexts carry the implicit unit priority and need no judgments
        assert all(c.n == 1 for c in contexts if c.kind != "options")

    def test_compared_sets_never_mix_levels(self, paper_model):
        # options contexts compare the alternatives cluster only; all other
        # element-level contexts stay on the criteria side
        network = paper_model.network
        alt = set(network.alternatives_cluster.element_ids())
        criteria = {
            e for c in network.criteria_clusters for e in c.element_ids()
        }
        cluster_ids = {c.id for c in network.clusters}
        for ctx in comparison_contexts(network):
            compared = set(ctx.compared)
            if ctx.kind == "options":
                assert compared == alt
            elif ctx.kind == "cluster_weights":
                assert compared <= cluster_ids
            else:
                assert compared <= criteria

    def test_local_contexts_stay_within_one_cluster(self, paper_model):
        network = paper_model.network
        for ctx in comparison_contexts(network):
            if ctx.kind == "local_priorities":
                owner = network.cluster(ctx.control)
                assert set(ctx.compared) <= set(owner.element_ids())

    def test_option_contexts_column_is_the_controlling_element(self, paper_model):
        for ctx in comparison_contexts(paper_model.network):
            if ctx.kind == "options":
                assert ctx.column == ctx.control
