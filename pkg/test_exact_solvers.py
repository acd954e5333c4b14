#!/usr/bin/env python3
"""
Tests for the exact alliance-number solvers against a naive all-subsets search
"""

import random
import sys

import pytest

from graph_core import Tree, VertexSet, from_pruefer, load_tree
from alliance_predicates import is_global_defensive, is_global_offensive
from exact_solvers import InstanceTooLarge, SolveKind, check_exact_cap, gamma_a, gamma_o, solve


def naive_minimum(tree, predicate):
    """Smallest size and lexicographically first witness over all 2^n subsets"""
    hits = []
    for mask in range(1, 1 << tree.n):
        s = VertexSet(tree.n, mask)
        if predicate(tree, s):
            hits.append((len(s), s.as_list()))
    size, witness = min(hits)
    return size, witness


def random_tree(rng, n):
    return from_pruefer([rng.randrange(n) for _ in range(n - 2)], n)


def test_worked_example_values():
    tree = load_tree("trees/fig3.tree")
    defensive = gamma_a(tree)
    offensive = gamma_o(tree)
    assert defensive.value == 3
    assert defensive.witness.as_list() == [0, 3, 4]
    assert defensive.kind is SolveKind.DEFENSIVE
    assert offensive.value == 3
    assert offensive.witness.as_list() == [1, 3, 4]
    assert is_global_offensive(tree, offensive.witness)


def test_path3():
    tree = load_tree("trees/path3.tree")
    assert gamma_a(tree).witness.as_list() == [0, 1]
    assert gamma_o(tree).witness.as_list() == [1]


@pytest.mark.parametrize("edges, n, a, o", [
    ([], 1, 1, 1),
    ([(0, 1)], 2, 1, 1),
    ([(0, 1), (0, 2), (0, 3)], 4, 2, 1),
    ([(0, 1), (1, 2), (2, 3)], 4, 2, 2),
])
def test_small_trees(edges, n, a, o):
    tree = Tree.from_edges(n, edges)
    assert gamma_a(tree).value == a
    assert gamma_o(tree).value == o


def test_path4_first_witness():
    tree = Tree.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert gamma_a(tree).witness.as_list() == [0, 3]
    assert gamma_o(tree).witness.as_list() == [0, 2]


def test_solve_dispatch_and_as_dict():
    tree = load_tree("trees/fig3.tree")
    result = solve(tree, SolveKind.DEFENSIVE)
    data = result.as_dict()
    assert data["value"] == 3
    assert data["witness"] == [0, 3, 4]
    assert data["kind"] == "defensive"
    assert data["explored"] >= 1


def test_cap_enforced():
    tree = load_tree("trees/fig1.tree")
    with pytest.raises(InstanceTooLarge) as excinfo:
        gamma_a(tree, max_exact_n=9)
    assert "--max-exact-n" in str(excinfo.value)
    with pytest.raises(InstanceTooLarge):
        gamma_o(tree, max_exact_n=9)
    assert check_exact_cap(tree, max_exact_n=10) == 10


def test_solvers_match_naive_oracle_on_random_trees():
    rng = random.Random(17)
    for _ in range(150):
        tree = random_tree(rng, rng.randint(2, 9))
        a, a_witness = naive_minimum(tree, is_global_defensive)
        o, o_witness = naive_minimum(tree, is_global_offensive)
        assert gamma_a(tree).value == a
        assert gamma_a(tree).witness.as_list() == a_witness
        assert gamma_o(tree).value == o
        assert gamma_o(tree).witness.as_list() == o_witness


def test_offensive_number_at_most_half():
    rng = random.Random(23)
    for _ in range(100):
        n = rng.randint(2, 12)
        assert 2 * gamma_o(random_tree(rng, n)).value <= n


def test_witness_is_an_alliance():
    rng = random.Random(31)
    for _ in range(60):
        tree = random_tree(rng, rng.randint(2, 14))
        assert is_global_defensive(tree, gamma_a(tree).witness)
        assert is_global_offensive(tree, gamma_o(tree).witness)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
