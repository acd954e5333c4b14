"""
Tree corpora

All labeled trees in lexicographic Pruefer order, one representative per
isomorphism class (the class member with the least Pruefer encoding), and
seeded uniform random labeled trees. Random sample i draws its state from
(seed, i) so samples do not depend on generation order.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from config import get_max_free_n, get_max_labeled_n
from graph_core import (
    AllianceError,
    ParseError,
    Tree,
    pruefer_edges,
    adjacency_code,
    from_pruefer,
    to_pruefer,
)
from exact_solvers import InstanceTooLarge

logger = logging.getLogger(__name__)

SEED_LIMIT = 2 ** 64


class BadCorpusSpec(AllianceError):
    """Invalid corpus parameters"""


class CorpusMode(Enum):
    """Corpus generation modes"""
    LABELED = "exhaustive-labeled"
    FREE = "exhaustive-free"
    RANDOM = "random"


@dataclass(frozen=True)
class CorpusSpec:
    """What to generate: mode, vertex-count range, and sampling parameters"""
    mode: CorpusMode
    n_min: int
    n_max: int
    sample_count: int = 1
    seed: int = 0

    def __post_init__(self):
        errors = []
        if self.n_min < 1:
            errors.append("n must be at least 1")
        if self.n_max < self.n_min:
            errors.append(f"empty n range {self.n_min}..{self.n_max}")
        if self.mode is CorpusMode.RANDOM and self.sample_count < 1:
            errors.append("sample_count must be at least 1 in random mode")
        if not 0 <= self.seed < SEED_LIMIT:
            errors.append("seed must be an unsigned 64-bit integer")
        if errors:
            raise BadCorpusSpec(f"Invalid corpus spec: {'; '.join(errors)}")

    @property
    def n_values(self) -> range:
        return range(self.n_min, self.n_max + 1)

    def as_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"mode": self.mode.value, "n_min": self.n_min, "n_max": self.n_max}
        if self.mode is CorpusMode.RANDOM:
            data.update(sample_count=self.sample_count, seed=self.seed)
        return data


@dataclass(frozen=True)
class CorpusItem:
    """One corpus tree with the identifiers needed to reproduce it"""
    instance_id: str
    pruefer: Tuple[int, ...]
    tree: Tree


def parse_n_range(text: str) -> Tuple[int, int]:
    """'7' -> (7, 7); '2..8' -> (2, 8)"""
    parts = text.split("..")
    try:
        if len(parts) == 1:
            value = int(parts[0])
            return value, value
        if len(parts) == 2:
            return int(parts[0]), int(parts[1])
    except ValueError:
        pass
    raise ParseError(f"expected an integer or a range a..b, got {text!r}")


def format_corpus_line(n: int, seq: Sequence[int]) -> str:
    """Corpus dump line 'n:p1,p2,...' (empty sequence for n <= 2)"""
    return f"{n}:{','.join(str(x) for x in seq)}"


def parse_corpus_line(line: str) -> Tree:
    head, sep, body = line.strip().partition(":")
    if not sep or not head.isdigit():
        raise ParseError(f"expected 'n:p1,p2,...', got {line!r}")
    try:
        seq = [int(tok) for tok in body.split(",") if tok.strip()]
    except ValueError:
        raise ParseError(f"non-integer entry in {line!r}")
    return from_pruefer(seq, int(head))


def _check_cap(n: int, cap: int, what: str) -> None:
    if n < 1:
        raise BadCorpusSpec(f"n must be at least 1, got {n}")
    if n > cap:
        raise InstanceTooLarge(f"{what} enumeration is capped at n={cap}, got n={n}")


def _labeled_items(n: int) -> Iterator[CorpusItem]:
    for seq in product(range(n), repeat=max(n - 2, 0)):
        tree = Tree.from_normalized(n, pruefer_edges(seq, n))
        yield CorpusItem(instance_id=format_corpus_line(n, seq), pruefer=seq, tree=tree)


def enumerate_labeled_trees(n: int, max_labeled_n: Optional[int] = None) -> Iterator[Tree]:
    """
    All n^(n-2) labeled trees in lexicographic Pruefer order

    Raises:
        InstanceTooLarge: n above the labeled enumeration cap (default 9)
    """
    _check_cap(n, get_max_labeled_n() if max_labeled_n is None else max_labeled_n, "labeled")
    for item in _labeled_items(n):
        yield item.tree


def rooted_tree_counts(limit: int) -> List[int]:
    """Unlabeled rooted tree counts r[0..limit] (r[0] = 0)"""
    r = [0, 1]
    for m in range(1, limit):
        total = 0
        for k in range(1, m + 1):
            divisor_sum = sum(d * r[d] for d in range(1, k + 1) if k % d == 0)
            total += divisor_sum * r[m - k + 1]
        r.append(total // m)
    return r[:limit + 1]


def free_tree_count(n: int) -> int:
    """Number of unlabeled free trees on n vertices (Otter)"""
    if n < 1:
        return 0
    r = rooted_tree_counts(n)
    pairs = sum(r[i] * r[n - i] for i in range(1, n))
    twice = 2 * r[n] - pairs + (r[n // 2] if n % 2 == 0 else 0)
    return twice // 2


def _free_items(n: int) -> Iterator[CorpusItem]:
    target = free_tree_count(n)
    seen = set()
    scanned = 0
    for seq in product(range(n), repeat=max(n - 2, 0)):
        scanned += 1
        edges = pruefer_edges(seq, n)
        neighbors: List[List[int]] = [[] for _ in range(n)]
        for u, v in edges:
            neighbors[u].append(v)
            neighbors[v].append(u)
        code = adjacency_code(neighbors)
        if code in seen:
            continue
        seen.add(code)
        yield CorpusItem(
            instance_id=format_corpus_line(n, seq),
            pruefer=seq,
            tree=Tree.from_normalized(n, edges),
        )
        if len(seen) == target:
            break
    logger.debug(f"Free trees n={n}: {len(seen)} classes after scanning {scanned} sequences")


def enumerate_free_trees(n: int, max_free_n: Optional[int] = None) -> Iterator[Tree]:
    """
    One tree per isomorphism class, the one with the least Pruefer encoding

    Pruefer sequences are scanned in lexicographic order and deduplicated by
    canonical code, so the first member seen of each class is its
    representative; the scan stops once free_tree_count(n) classes are found.

    Raises:
        InstanceTooLarge: n above the free enumeration cap (default 10)
    """
    _check_cap(n, get_max_free_n() if max_free_n is None else max_free_n, "free")
    for item in _free_items(n):
        yield item.tree


def _random_pruefer(rng: np.random.Generator, n: int) -> Tuple[int, ...]:
    if n <= 2:
        return ()
    return tuple(rng.integers(0, n, size=n - 2).tolist())


def _rng(seed: int, index: int) -> np.random.Generator:
    if not 0 <= seed < SEED_LIMIT:
        raise BadCorpusSpec(f"seed must be an unsigned 64-bit integer, got {seed}")
    return np.random.default_rng([seed, index])


def random_tree(n: int, seed: int, index: int = 0) -> Tree:
    """
    Uniform random labeled tree from a uniform Pruefer sequence

    Args:
        n: vertex count (>= 1)
        seed: unsigned 64-bit seed
        index: sample index; the generator state derives from (seed, index)
    """
    if n < 1:
        raise BadCorpusSpec(f"n must be at least 1, got {n}")
    return from_pruefer(_random_pruefer(_rng(seed, index), n), n)


def _random_items(spec: CorpusSpec) -> Iterator[CorpusItem]:
    for i in range(spec.sample_count):
        rng = _rng(spec.seed, i)
        n = spec.n_min if spec.n_min == spec.n_max else int(rng.integers(spec.n_min, spec.n_max + 1))
        seq = _random_pruefer(rng, n)
        yield CorpusItem(
            instance_id=f"random:{n}:{spec.seed}:{i}",
            pruefer=seq,
            tree=from_pruefer(seq, n),
        )


def corpus(spec: CorpusSpec,
           max_labeled_n: Optional[int] = None,
           max_free_n: Optional[int] = None) -> Iterator[CorpusItem]:
    """Stream the corpus described by spec, in a deterministic order"""
    logger.info(f"Generating corpus {spec.as_dict()}")

    if spec.mode is CorpusMode.RANDOM:
        yield from _random_items(spec)
        return

    if spec.mode is CorpusMode.LABELED:
        cap = get_max_labeled_n() if max_labeled_n is None else max_labeled_n
        what, items = "labeled", _labeled_items
    else:
        cap = get_max_free_n() if max_free_n is None else max_free_n
        what, items = "free", _free_items

    # fail before yielding anything
    for n in spec.n_values:
        _check_cap(n, cap, what)
    for n in spec.n_values:
        yield from items(n)


def dump_corpus(items) -> Iterator[str]:
    """Corpus dump lines for a stream of CorpusItem"""
    for item in items:
        yield format_corpus_line(item.tree.n, item.pruefer)


def pruefer_id(tree: Tree) -> str:
    """Instance id of a tree in corpus dump form"""
    return format_corpus_line(tree.n, to_pruefer(tree))
