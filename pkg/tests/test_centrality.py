import logging
import math
import random

import pytest
from hypothesis import given, settings

from polyprox import (
    EmptyGraphError,
    EmptyInputError,
    EmptyMaskError,
    Polytree,
    UnknownNodeError,
    ZeroExponentError,
    harmonic_centrality,
    harmonic_nobelity,
    holder_centrality,
    holder_mean,
    holder_nobelity,
)
from polyprox import oracle
from strategies import dags, distance_multisets

INF = math.inf
REL = 1e-12


def close(a, b, rel=REL):
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= rel * max(abs(a), abs(b), 1e-300)


class TestHolderMean:
    def test_single_value(self):
        assert holder_mean([7], h=3.5) == 7

    def test_equal_values_any_exponent(self):
        assert close(holder_mean([2, 2, 2], h=7), 2.0)

    def test_harmonic_of_one_and_two(self):
        # ((1/2)(1 + 1/2))^-1 = 4/3, worked by hand
        assert close(holder_mean([1, 2], h=-1), 4.0 / 3.0)

    def test_unreachable_contributes_zero_below_zero(self):
        # ((1/2)(1 + 0))^-1 = 2
        assert holder_mean([1, INF], h=-1) == 2.0

    def test_unreachable_poisons_positive_exponents(self):
        assert holder_mean([1, INF], h=1) == INF

    def test_all_unreachable(self):
        assert holder_mean([INF, INF], h=-1) == INF

    def test_empty_rejected(self):
        with pytest.raises(EmptyInputError):
            holder_mean([], h=-1)

    def test_zero_exponent_rejected(self):
        with pytest.raises(ZeroExponentError):
            holder_mean([1, 2], h=0)

    @given(distance_multisets())
    def test_matches_arithmetic_and_harmonic_formulas(self, values):
        arithmetic = sum(values) / len(values)
        harmonic = len(values) / sum(1.0 / v for v in values)
        assert close(holder_mean(values, 1), arithmetic)
        assert close(holder_mean(values, -1), harmonic)

    @given(distance_multisets())
    def test_nondecreasing_in_h(self, values):
        grid = [-8, -4, -1, 1, 2, 4]
        means = [holder_mean(values, h) for h in grid]
        for lo, hi in zip(means, means[1:]):
            assert lo <= hi * (1 + 1e-9)

    @given(distance_multisets())
    def test_strongly_negative_h_approaches_minimum(self, values):
        assert abs(holder_mean(values, -200) - min(values)) <= 0.02 * min(values)


class TestHolderCentrality:
    def test_chain_outcloseness(self, chain):
        scores = {s.node: s for s in holder_centrality(chain, -1, "out")}
        assert close(scores["a"].mean_distance, 4.0 / 3.0)
        assert close(scores["a"].closeness, 0.75)
        assert scores["c"].closeness == 0.0
        assert scores["c"].mean_distance == INF

    def test_chain_incloseness_mirrors(self, chain):
        scores = {s.node: s for s in holder_centrality(chain, -1, "in")}
        assert close(scores["c"].closeness, 0.75)
        assert scores["a"].closeness == 0.0

    def test_single_node_graph(self):
        (score,) = holder_centrality(Polytree(["only"]), -1)
        assert score.mean_distance == INF
        assert score.closeness == 0.0

    def test_empty_graph_rejected(self):
        with pytest.raises(EmptyGraphError):
            holder_centrality(Polytree(), -1)

    def test_zero_exponent_rejected(self, chain):
        with pytest.raises(ZeroExponentError):
            holder_centrality(chain, 0)

    def test_bad_direction_rejected(self, chain):
        with pytest.raises(ValueError):
            holder_centrality(chain, -1, "sideways")

    def test_positive_h_on_unconnected_graph_warns(self, chain, caplog):
        with caplog.at_level(logging.WARNING, logger="polyprox.centrality"):
            scores = {s.node: s for s in holder_centrality(chain, 1, "out")}
        assert scores["b"].mean_distance == INF
        assert any("inf" in r.message for r in caplog.records)

    def test_harmonic_alias(self, chain):
        assert harmonic_centrality(chain, "out") == holder_centrality(chain, -1.0, "out")

    def test_two_disconnected_nodes_score_zero(self):
        g = Polytree(["a", "b"])
        assert all(s.closeness == 0.0 for s in harmonic_centrality(g))

    def test_bipartite_parent_row(self):
        g = Polytree([], [("p1", "c1"), ("p1", "c2"), ("p2", "c1"), ("p2", "c2")])
        scores = {s.node: s for s in harmonic_centrality(g, "out")}
        # each parent: distances {1, 1, inf} over three targets -> closeness 2/3
        assert close(scores["p1"].closeness, 2.0 / 3.0)
        assert close(scores["p2"].closeness, 2.0 / 3.0)


class TestHolderNobelity:
    def test_chain_masked_to_tail(self, chain):
        scores = {s.node: s for s in holder_nobelity(chain, ["c"], -1, "out")}
        assert scores["a"].mean_distance == 2.0
        assert scores["a"].closeness == 0.5

    def test_full_mask_reduces_to_centrality(self, chain):
        full = holder_nobelity(chain, chain.node_ids, -1, "out")
        assert full == holder_centrality(chain, -1, "out")

    def test_node_alone_in_mask_scores_zero(self, chain):
        scores = {s.node: s for s in holder_nobelity(chain, ["a"], -1, "out")}
        assert scores["a"].closeness == 0.0
        assert scores["a"].mean_distance == INF

    def test_empty_mask_rejected(self, chain):
        with pytest.raises(EmptyMaskError):
            holder_nobelity(chain, [], -1)

    def test_unknown_mask_member_rejected(self, chain):
        with pytest.raises(UnknownNodeError):
            holder_nobelity(chain, ["zz"], -1)

    def test_harmonic_alias(self, chain):
        assert harmonic_nobelity(chain, ["c"]) == holder_nobelity(chain, ["c"], -1.0)

    def test_unreachable_mask_members_dilute_below_zero(self):
        g = Polytree(["z"], [("a", "b")])
        small = {s.node: s for s in holder_nobelity(g, ["b"], -1, "out")}
        diluted = {s.node: s for s in holder_nobelity(g, ["b", "z"], -1, "out")}
        assert diluted["a"].closeness < small["a"].closeness


@given(dags(min_nodes=1, max_nodes=10))
def test_direction_duality(g):
    for h in (-1.0, 1.0):
        assert holder_centrality(g, h, "out") == holder_centrality(g.reverse(), h, "in")


@settings(max_examples=25)
@given(dags(min_nodes=2, max_nodes=20))
def test_engine_matches_oracle_on_random_dags(g):
    rng = random.Random(7)
    mask = sorted(rng.sample(g.node_ids, min(3, len(g))))
    for h in (-2.5, -1.0, 1.0, 2.0):
        for direction in ("out", "in"):
            engine = holder_nobelity(g, mask, h, direction)
            reference = oracle.holder_scores(g, h, direction, mask=mask)
            for got, want in zip(engine, reference):
                assert got.node == want.node
                assert close(got.mean_distance, want.mean_distance)
                assert close(got.closeness, want.closeness)
