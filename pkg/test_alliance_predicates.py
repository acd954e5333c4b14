#!/usr/bin/env python3
"""
Tests for neighborhoods, domination and the alliance predicates
"""

import random
import sys

import networkx as nx
import pytest

from graph_core import Tree, VertexOutOfRange, VertexSet, from_pruefer, load_tree
from alliance_predicates import (
    PredicateKind,
    alliance_violations,
    boundary,
    closed_neighborhood,
    evaluate,
    is_defensive,
    is_dominating,
    is_global_defensive,
    is_global_offensive,
    is_offensive,
    neighborhood_view,
)


@pytest.fixture
def fig3():
    return load_tree("trees/fig3.tree")


def literal_closed(tree, v):
    return {v} | set(tree.adjacency[v])


def literal_global_defensive(tree, s):
    covered = set(s).union(*(literal_closed(tree, v) for v in s)) if s else set()
    if covered != set(range(tree.n)):
        return False
    for v in s:
        inside = len(literal_closed(tree, v) & s)
        outside = len(literal_closed(tree, v) - s)
        if inside < outside:
            return False
    return True


def literal_global_offensive(tree, s):
    covered = set(s).union(*(literal_closed(tree, v) for v in s)) if s else set()
    if covered != set(range(tree.n)):
        return False
    for v in set(range(tree.n)) - s:
        inside = len(literal_closed(tree, v) & s)
        outside = len(literal_closed(tree, v) - s)
        if inside < outside:
            return False
    return True


def test_closed_neighborhood(fig3):
    assert closed_neighborhood(fig3, 3).as_list() == [2, 3, 4, 5]
    assert closed_neighborhood(fig3, 0).as_list() == [0, 1]
    view = neighborhood_view(fig3, 4)
    assert view.vertex == 4
    assert view.closed.as_list() == [3, 4, 6, 7]
    with pytest.raises(VertexOutOfRange):
        closed_neighborhood(fig3, 8)


def test_boundary(fig3):
    s = VertexSet.of(8, [0, 3, 4])
    assert boundary(fig3, s).as_list() == [1, 2, 5, 6, 7]
    assert len(boundary(fig3, VertexSet.empty(8))) == 0


def test_filled_alliance_is_global_defensive_not_offensive(fig3):
    s = VertexSet.of(8, [0, 3, 4])
    assert is_dominating(fig3, s)
    assert is_defensive(fig3, s)
    assert is_global_defensive(fig3, s)
    assert not is_global_offensive(fig3, s)
    assert alliance_violations(fig3, s, PredicateKind.GLOBAL_OFFENSIVE) == [1, 2]


def test_augmented_set_is_global_offensive(fig3):
    s = VertexSet.of(8, [0, 2, 3, 4])
    assert is_global_offensive(fig3, s)
    assert alliance_violations(fig3, s, PredicateKind.GLOBAL_OFFENSIVE) == []


def test_empty_set():
    tree = load_tree("trees/path3.tree")
    empty = VertexSet.empty(3)
    assert is_defensive(tree, empty)
    assert is_offensive(tree, empty)
    assert not is_dominating(tree, empty)
    assert not is_global_defensive(tree, empty)
    assert not is_global_offensive(tree, empty)
    assert alliance_violations(tree, empty, PredicateKind.DOMINATING) == [0, 1, 2]


def test_path3_center():
    tree = load_tree("trees/path3.tree")
    center = VertexSet.of(3, [1])
    assert is_dominating(tree, center)
    assert not is_defensive(tree, center)
    assert alliance_violations(tree, center, PredicateKind.DEFENSIVE) == [1]
    assert is_global_offensive(tree, center)
    assert is_global_defensive(tree, VertexSet.of(3, [0, 1]))


def test_single_vertex():
    tree = Tree.from_edges(1, [])
    whole = VertexSet.full(1)
    assert is_global_defensive(tree, whole)
    assert is_global_offensive(tree, whole)


def test_mismatched_set_size(fig3):
    with pytest.raises(VertexOutOfRange):
        is_dominating(fig3, VertexSet.of(3, [0]))


@pytest.mark.parametrize("kind, expected", [
    (PredicateKind.DOMINATING, True),
    (PredicateKind.DEFENSIVE, True),
    (PredicateKind.OFFENSIVE, False),
    (PredicateKind.GLOBAL_DEFENSIVE, True),
    (PredicateKind.GLOBAL_OFFENSIVE, False),
])
def test_evaluate_dispatch(fig3, kind, expected):
    assert evaluate(fig3, VertexSet.of(8, [0, 3, 4]), kind) is expected


def test_predicates_match_literal_definitions():
    rng = random.Random(2024)
    for _ in range(400):
        n = rng.randint(2, 14)
        tree = from_pruefer([rng.randrange(n) for _ in range(n - 2)], n)
        members = {v for v in range(n) if rng.random() < 0.5}
        s = VertexSet.of(n, members)
        assert is_global_defensive(tree, s) == literal_global_defensive(tree, members)
        assert is_global_offensive(tree, s) == literal_global_offensive(tree, members)


def test_domination_matches_networkx():
    rng = random.Random(99)
    for _ in range(200):
        n = rng.randint(2, 20)
        tree = from_pruefer([rng.randrange(n) for _ in range(n - 2)], n)
        graph = nx.Graph(list(tree.edges))
        members = [v for v in range(n) if rng.random() < 0.4]
        if not members:
            continue
        assert is_dominating(tree, VertexSet.of(n, members)) == nx.is_dominating_set(graph, members)


def test_domination_and_boundary_laws():
    rng = random.Random(61)
    for _ in range(300):
        n = rng.randint(1, 16)
        tree = from_pruefer([rng.randrange(n) for _ in range(n - 2)], n) if n > 1 else Tree.from_edges(1, [])
        s = VertexSet.of(n, [v for v in range(n) if rng.random() < 0.4])
        border = boundary(tree, s)
        assert len(border & s) == 0
        assert is_dominating(tree, s) == ((s | border) == VertexSet.full(n))
        superset = s | VertexSet.of(n, [v for v in range(n) if rng.random() < 0.3])
        if is_dominating(tree, s):
            assert is_dominating(tree, superset)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
