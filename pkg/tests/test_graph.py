import logging

import pytest
from hypothesis import given

from polyprox import (
    CycleError,
    DuplicateIdError,
    Person,
    Polytree,
    SelfLoopError,
    UnknownNodeError,
    ValidationError,
    merge,
)
from strategies import dags


class TestBuild:
    def test_chain_is_valid(self, chain):
        assert chain.node_ids == ("a", "b", "c")
        assert chain.edges == (("a", "b"), ("b", "c"))
        assert chain.children("a") == ("b",)
        assert chain.parents("c") == ("b",)

    def test_self_loop_rejected(self):
        with pytest.raises(SelfLoopError) as excinfo:
            Polytree([], [("a", "a")])
        assert excinfo.value.node_id == "a"

    def test_two_cycle_rejected_with_witness(self):
        with pytest.raises(CycleError) as excinfo:
            Polytree([], [("a", "b"), ("b", "a")])
        assert excinfo.value.path == ["a", "b", "a"]
        assert "a -> b -> a" in str(excinfo.value)

    def test_longer_cycle_witness_closes(self):
        with pytest.raises(CycleError) as excinfo:
            Polytree([], [("a", "b"), ("b", "c"), ("c", "a"), ("a", "d")])
        path = excinfo.value.path
        assert path[0] == path[-1]
        assert len(path) == 4

    def test_duplicate_edges_collapse(self):
        g = Polytree([], [("a", "b"), ("a", "b")])
        assert g.edges == (("a", "b"),)

    def test_conflicting_duplicate_person_rejected(self):
        with pytest.raises(DuplicateIdError):
            Polytree([("a", "Alice"), ("a", "Alan")], [])

    def test_identical_duplicate_person_collapses(self):
        g = Polytree([("a", "Alice"), ("a", "Alice")], [])
        assert g.names["a"] == "Alice"

    def test_unknown_endpoints_autoregister(self):
        g = Polytree([Person("a", "Alice")], [("a", "b")])
        assert g.names["b"] == ""

    def test_strict_rejects_unknown_endpoints(self):
        with pytest.raises(UnknownNodeError):
            Polytree([Person("a")], [("a", "b")], strict=True)

    def test_empty_id_rejected(self):
        with pytest.raises(ValidationError):
            Polytree([""], [])

    def test_empty_graph_is_valid(self):
        g = Polytree()
        assert len(g) == 0 and g.num_edges == 0


class TestMerge:
    def test_identity_element(self, chain):
        assert merge(chain, Polytree()) == chain
        assert merge(Polytree(), chain) == chain

    def test_idempotent(self, chain):
        assert merge(chain, chain) == chain

    def test_disjoint_edge_union(self):
        g = merge(Polytree([], [("a", "b")]), Polytree([], [("b", "c")]))
        assert g.edges == (("a", "b"), ("b", "c"))

    def test_nonempty_name_wins(self):
        g1 = Polytree([("a", "")], [])
        g2 = Polytree([("a", "Alice")], [])
        assert merge(g1, g2).names["a"] == "Alice"
        assert merge(g2, g1).names["a"] == "Alice"

    def test_name_conflict_keeps_first_and_warns(self, caplog):
        g1 = Polytree([("a", "Alice")], [])
        g2 = Polytree([("a", "Alan")], [])
        with caplog.at_level(logging.WARNING):
            merged = merge(g1, g2)
        assert merged.names["a"] == "Alice"
        assert any("name conflict" in r.message for r in caplog.records)

    def test_union_may_create_cycle(self):
        with pytest.raises(CycleError):
            merge(Polytree([], [("a", "b")]), Polytree([], [("b", "a")]))

    @given(dags(), dags())
    def test_commutative(self, g1, g2):
        assert merge(g1, g2) == merge(g2, g1)

    @given(dags(), dags(), dags())
    def test_associative(self, g1, g2, g3):
        assert merge(merge(g1, g2), g3) == merge(g1, merge(g2, g3))

    @given(dags())
    def test_self_merge_is_identity(self, g):
        assert merge(g, g) == g


class TestStructure:
    @given(dags())
    def test_topological_order_exists(self, g):
        order = g.topological_order()
        assert sorted(order) == list(g.node_ids)
        position = {pid: k for k, pid in enumerate(order)}
        assert all(position[p] < position[c] for p, c in g.edges)

    @given(dags())
    def test_reverse_is_involution(self, g):
        assert g.reverse().reverse() == g

    def test_reverse_flips_edges(self, chain):
        assert chain.reverse().edges == (("b", "a"), ("c", "b"))

    def test_equality_covers_names(self):
        assert Polytree([("a", "x")], []) != Polytree([("a", "y")], [])

    def test_require_unknown(self, chain):
        with pytest.raises(UnknownNodeError):
            chain.require("zz")
