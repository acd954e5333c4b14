#!/usr/bin/env python3
"""
Tests for labeled, free and random tree corpora
"""

import sys
from collections import defaultdict

import networkx as nx
import pytest

from graph_core import BadSequence, ParseError, Tree, canonical_code, load_tree, to_pruefer
from exact_solvers import InstanceTooLarge
from tree_corpus import (
    BadCorpusSpec,
    CorpusMode,
    CorpusSpec,
    corpus,
    dump_corpus,
    enumerate_free_trees,
    enumerate_labeled_trees,
    format_corpus_line,
    free_tree_count,
    parse_corpus_line,
    parse_n_range,
    pruefer_id,
    random_tree,
    rooted_tree_counts,
)

FREE_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]


@pytest.mark.parametrize("n", range(1, 7))
def test_labeled_counts(n):
    assert sum(1 for _ in enumerate_labeled_trees(n)) == n ** max(n - 2, 0)


def test_labeled_order_is_lexicographic_pruefer():
    sequences = [to_pruefer(tree) for tree in enumerate_labeled_trees(5)]
    assert sequences == sorted(sequences)
    assert sequences[0] == [0, 0, 0]
    assert sequences[-1] == [4, 4, 4]


def test_labeled_cap():
    with pytest.raises(InstanceTooLarge):
        next(enumerate_labeled_trees(10))
    with pytest.raises(InstanceTooLarge):
        next(enumerate_labeled_trees(6, max_labeled_n=5))


def test_rooted_tree_counts():
    assert rooted_tree_counts(9) == [0, 1, 1, 2, 4, 9, 20, 48, 115, 286]


def test_free_tree_count_formula():
    assert [free_tree_count(n) for n in range(1, 11)] == FREE_COUNTS
    assert free_tree_count(12) == 551
    assert free_tree_count(0) == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_free_counts(n):
    assert sum(1 for _ in enumerate_free_trees(n)) == FREE_COUNTS[n - 1]


@pytest.mark.slow
@pytest.mark.parametrize("n", [9, 10])
def test_free_counts_large(n):
    assert sum(1 for _ in enumerate_free_trees(n)) == FREE_COUNTS[n - 1]


def test_free_cap():
    with pytest.raises(InstanceTooLarge):
        next(enumerate_free_trees(11))


@pytest.mark.parametrize("n", range(1, 8))
def test_free_matches_labeled_dedupe(n):
    least = {}
    for tree in enumerate_labeled_trees(n):
        least.setdefault(canonical_code(tree), to_pruefer(tree))
    free = list(enumerate_free_trees(n))
    assert len(least) == len(free)
    for tree in free:
        assert to_pruefer(tree) == least[canonical_code(tree)]


@pytest.mark.parametrize("n", range(2, 9))
def test_free_matches_networkx(n):
    ours = {canonical_code(tree) for tree in enumerate_free_trees(n)}
    theirs = {canonical_code(Tree.from_edges(n, list(g.edges()))) for g in nx.nonisomorphic_trees(n)}
    assert ours == theirs


@pytest.mark.parametrize("n", [9, 10])
def test_count_formula_matches_networkx_classes(n):
    theirs = {canonical_code(Tree.from_edges(n, list(g.edges()))) for g in nx.nonisomorphic_trees(n)}
    assert len(theirs) == free_tree_count(n) == FREE_COUNTS[n - 1]


@pytest.mark.slow
@pytest.mark.parametrize("n", [9, 10])
def test_free_matches_networkx_large(n):
    ours = [canonical_code(tree) for tree in enumerate_free_trees(n)]
    theirs = {canonical_code(Tree.from_edges(n, list(g.edges()))) for g in nx.nonisomorphic_trees(n)}
    assert len(ours) == len(set(ours))
    assert set(ours) == theirs


def test_worked_example_class_is_in_free_corpus():
    code = canonical_code(load_tree("trees/fig3.tree"))
    assert code in {canonical_code(tree) for tree in enumerate_free_trees(8)}


def test_random_tree_reproducible():
    a = random_tree(20, seed=12345, index=3)
    b = random_tree(20, seed=12345, index=3)
    assert a == b
    assert a.n == 20 and len(a.edges) == 19
    assert random_tree(1, seed=0).n == 1
    assert random_tree(2, seed=0).edges == ((0, 1),)


def test_random_tree_bad_arguments():
    with pytest.raises(BadCorpusSpec):
        random_tree(0, seed=1)
    with pytest.raises(BadCorpusSpec):
        random_tree(5, seed=-1)
    with pytest.raises(BadCorpusSpec):
        random_tree(5, seed=2 ** 64)


def test_random_tree_degree_statistics():
    # deg(v) - 1 ~ Binomial(n - 2, 1/n) for a uniform labeled tree
    n, samples = 50, 10000
    degree_sum = 0
    leaves = 0
    for i in range(samples):
        tree = random_tree(n, seed=2024, index=i)
        degree_sum += tree.degree(0)
        leaves += sum(1 for v in range(n) if tree.degree(v) == 1)
    mean_degree = degree_sum / samples
    assert abs(mean_degree - (1 + (n - 2) / n)) < 0.05
    leaf_fraction = leaves / (samples * n)
    assert abs(leaf_fraction - (1 - 1 / n) ** (n - 2)) < 0.01


@pytest.mark.parametrize("kwargs", [
    dict(mode=CorpusMode.FREE, n_min=0, n_max=3),
    dict(mode=CorpusMode.FREE, n_min=5, n_max=4),
    dict(mode=CorpusMode.RANDOM, n_min=5, n_max=5, sample_count=0),
    dict(mode=CorpusMode.RANDOM, n_min=5, n_max=5, seed=-1),
    dict(mode=CorpusMode.RANDOM, n_min=5, n_max=5, seed=2 ** 64),
])
def test_bad_corpus_spec(kwargs):
    with pytest.raises(BadCorpusSpec):
        CorpusSpec(**kwargs)


def test_corpus_checks_caps_before_yielding():
    spec = CorpusSpec(mode=CorpusMode.LABELED, n_min=3, n_max=10)
    with pytest.raises(InstanceTooLarge):
        next(corpus(spec))


def test_free_corpus_ids_and_sizes():
    items = list(corpus(CorpusSpec(mode=CorpusMode.FREE, n_min=1, n_max=8)))
    assert len(items) == sum(FREE_COUNTS[:8])
    assert items[0].instance_id == "1:"
    assert items[1].instance_id == "2:"
    per_n = defaultdict(int)
    for item in items:
        per_n[item.tree.n] += 1
        assert parse_corpus_line(item.instance_id) == item.tree
    assert [per_n[n] for n in range(1, 9)] == FREE_COUNTS[:8]


def test_random_corpus_deterministic():
    spec = CorpusSpec(mode=CorpusMode.RANDOM, n_min=5, n_max=12, sample_count=40, seed=9)
    first = list(corpus(spec))
    second = list(corpus(spec))
    assert [item.instance_id for item in first] == [item.instance_id for item in second]
    assert [item.tree for item in first] == [item.tree for item in second]
    assert first[0].instance_id.startswith("random:")
    assert first[0].instance_id.endswith(":9:0")
    assert all(5 <= item.tree.n <= 12 for item in first)


def test_random_corpus_fixed_n():
    spec = CorpusSpec(mode=CorpusMode.RANDOM, n_min=30, n_max=30, sample_count=3, seed=1)
    ids = [item.instance_id for item in corpus(spec)]
    assert ids == ["random:30:1:0", "random:30:1:1", "random:30:1:2"]


def test_parse_n_range():
    assert parse_n_range("7") == (7, 7)
    assert parse_n_range("2..8") == (2, 8)
    for text in ["a", "2..b", "1..2..3", ""]:
        with pytest.raises(ParseError):
            parse_n_range(text)


def test_corpus_lines():
    assert format_corpus_line(2, []) == "2:"
    assert format_corpus_line(6, [3, 3, 3, 4]) == "6:3,3,3,4"
    assert parse_corpus_line("2:").edges == ((0, 1),)
    assert parse_corpus_line("6:3,3,3,4").edges == ((0, 3), (1, 3), (2, 3), (3, 4), (4, 5))
    with pytest.raises(ParseError):
        parse_corpus_line("x:1")
    with pytest.raises(ParseError):
        parse_corpus_line("4:1,a")
    with pytest.raises(BadSequence):
        parse_corpus_line("4:1")


def test_dump_corpus():
    lines = list(dump_corpus(corpus(CorpusSpec(mode=CorpusMode.LABELED, n_min=3, n_max=3))))
    assert lines == ["3:0", "3:1", "3:2"]


def test_pruefer_id():
    tree = load_tree("trees/fig3.tree")
    assert pruefer_id(tree) == format_corpus_line(8, to_pruefer(tree))
    assert parse_corpus_line(pruefer_id(tree)) == tree


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
