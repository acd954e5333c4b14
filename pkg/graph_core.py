"""
Tree representation for the global alliance toolkit

Validated trees on vertices 0..n-1, vertex subsets as bitmasks, the tree
file format, Pruefer encoding/decoding, 2-coloring, centers and AHU
canonical codes for isomorphism dedupe.
"""

import heapq
import logging
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import islice
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

_UINT = re.compile(r"[0-9]+")


class AllianceError(Exception):
    """Base exception for every toolkit error"""

    def __init__(self, message, instance_id=None):
        super().__init__(message)
        self.instance_id = instance_id


class ParseError(AllianceError):
    """Malformed line in a tree file or vertex list"""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class NotATree(AllianceError):
    """Edge list is not a tree (cycle, disconnection, duplicate edge, self-loop)"""


class BadVertexIds(AllianceError):
    """Vertex ids do not form the contiguous range 0..n-1"""


class BadSequence(AllianceError):
    """Pruefer sequence has the wrong length or an out-of-range entry"""


class VertexOutOfRange(AllianceError):
    """Vertex index outside 0..n-1"""


@dataclass(frozen=True)
class VertexSet:
    """Subset of the vertices of an n-vertex tree, stored as a bitmask"""
    n: int
    mask: int = 0

    @classmethod
    def of(cls, n: int, ids: Iterable[int]) -> 'VertexSet':
        mask = 0
        for v in ids:
            if not 0 <= v < n:
                raise VertexOutOfRange(f"vertex {v} outside 0..{n - 1}")
            mask |= 1 << v
        return cls(n, mask)

    @classmethod
    def empty(cls, n: int) -> 'VertexSet':
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> 'VertexSet':
        return cls(n, (1 << n) - 1)

    @property
    def members(self) -> Tuple[int, ...]:
        """Members in ascending order"""
        out = []
        m = self.mask
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return tuple(out)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and bool(self.mask >> v & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __or__(self, other: 'VertexSet') -> 'VertexSet':
        self._check_compatible(other)
        return VertexSet(self.n, self.mask | other.mask)

    def __and__(self, other: 'VertexSet') -> 'VertexSet':
        self._check_compatible(other)
        return VertexSet(self.n, self.mask & other.mask)

    def __sub__(self, other: 'VertexSet') -> 'VertexSet':
        self._check_compatible(other)
        return VertexSet(self.n, self.mask & ~other.mask)

    def complement(self) -> 'VertexSet':
        return VertexSet(self.n, ((1 << self.n) - 1) & ~self.mask)

    def issubset(self, other: 'VertexSet') -> bool:
        self._check_compatible(other)
        return self.mask & ~other.mask == 0

    def as_list(self) -> List[int]:
        return list(self.members)

    def _check_compatible(self, other: 'VertexSet') -> None:
        if self.n != other.n:
            raise ValueError(f"vertex sets over {self.n} and {other.n} vertices do not mix")

    def __repr__(self) -> str:
        return f"VertexSet({list(self.members)}, n={self.n})"


@dataclass(frozen=True)
class Bipartition:
    """2-coloring of a tree; side_a holds vertex 0"""
    side_a: VertexSet
    side_b: VertexSet


@dataclass(frozen=True)
class Tree:
    """
    Validated tree on vertices 0..n-1

    Edges are stored as (u, v) with u < v, sorted; neighbor lists are sorted
    ascending. Build through Tree.from_edges, parse_tree or from_pruefer.
    """
    n: int
    edges: Tuple[Tuple[int, int], ...]
    adjacency: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> 'Tree':
        """
        Build and validate a tree

        Raises:
            NotATree: cycle, disconnection, duplicate edge or self-loop
            BadVertexIds: an endpoint outside 0..n-1
        """
        if n < 1:
            raise NotATree("a tree needs at least one vertex")

        seen = set()
        normalized = []
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise BadVertexIds(f"edge {u}-{v} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise NotATree(f"self-loop at vertex {u}")
            edge = (u, v) if u < v else (v, u)
            if edge in seen:
                raise NotATree(f"duplicate edge {edge[0]}-{edge[1]}")
            seen.add(edge)
            normalized.append(edge)

        if len(normalized) > n - 1:
            raise NotATree(f"{len(normalized)} edges on {n} vertices: the graph has a cycle")
        if len(normalized) < n - 1:
            raise NotATree(f"{len(normalized)} edges on {n} vertices: the graph is disconnected")

        tree = cls.from_normalized(n, normalized)
        if len(tree.bfs_order()) != n:
            raise NotATree("graph is disconnected (and therefore has a cycle)")
        return tree

    @classmethod
    def from_normalized(cls, n: int, edges: Sequence[Tuple[int, int]]) -> 'Tree':
        """Build without validation; edges must already be normalized"""
        neighbors: List[List[int]] = [[] for _ in range(n)]
        for u, v in edges:
            neighbors[u].append(v)
            neighbors[v].append(u)
        return cls(
            n=n,
            edges=tuple(sorted(edges)),
            adjacency=tuple(tuple(sorted(nbrs)) for nbrs in neighbors),
        )

    def neighbors(self, v: int) -> Tuple[int, ...]:
        self.check_vertex(v)
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise VertexOutOfRange(f"vertex {v} outside 0..{self.n - 1}")

    def vertex_set(self, ids: Iterable[int]) -> VertexSet:
        return VertexSet.of(self.n, ids)

    def check_set(self, s: VertexSet) -> None:
        if s.n != self.n:
            raise VertexOutOfRange(f"vertex set over {s.n} vertices used with a {self.n}-vertex tree")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def closed_masks(self) -> Tuple[int, ...]:
        """Closed neighborhood N[v] of every vertex as a bitmask"""
        masks = []
        for v, nbrs in enumerate(self.adjacency):
            m = 1 << v
            for w in nbrs:
                m |= 1 << w
            masks.append(m)
        return tuple(masks)

    @cached_property
    def closed_sizes(self) -> Tuple[int, ...]:
        return tuple(len(nbrs) + 1 for nbrs in self.adjacency)

    def bfs_order(self, root: int = 0) -> List[int]:
        order = [root]
        visited = [False] * self.n
        visited[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in self.adjacency[v]:
                if not visited[w]:
                    visited[w] = True
                    order.append(w)
                    queue.append(w)
        return order


def parse_tree(text: str) -> Tree:
    """
    Parse the edge-list tree format

    One edge per line as two nonnegative integers; empty lines and lines
    starting with '#' are ignored; an optional 'vertices <n>' header fixes n
    (mandatory for the one-vertex tree). Without a header n = max id + 1.

    Raises:
        ParseError: malformed line
        NotATree: cycle, disconnection, duplicate edge or self-loop
        BadVertexIds: gap in the id range
    """
    declared_n: Optional[int] = None
    edges: List[Tuple[int, int]] = []

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()

        if tokens[0] == "vertices":
            if declared_n is not None:
                raise ParseError("repeated 'vertices' header", line_number)
            if len(tokens) != 2 or not _UINT.fullmatch(tokens[1]) or int(tokens[1]) < 1:
                raise ParseError(f"expected 'vertices <n>' with n >= 1, got {line!r}", line_number)
            declared_n = int(tokens[1])
            continue

        if len(tokens) != 2 or not all(_UINT.fullmatch(tok) for tok in tokens):
            raise ParseError(f"expected two nonnegative integers, got {line!r}", line_number)
        edges.append((int(tokens[0]), int(tokens[1])))

    if not edges and declared_n is None:
        raise ParseError("no edges and no 'vertices' header")

    for u, v in edges:
        if u == v:
            raise NotATree(f"self-loop at vertex {u}")
    normalized = {(min(u, v), max(u, v)) for u, v in edges}
    if len(normalized) != len(edges):
        raise NotATree("duplicate edge")

    used = {x for edge in edges for x in edge}
    inferred_n = max(used) + 1 if used else 0
    n = declared_n if declared_n is not None else inferred_n

    if inferred_n > n:
        raise BadVertexIds(f"vertex {inferred_n - 1} exceeds the declared {n} vertices")
    if n >= 2 and len(used) != n:
        # used is a subset of 0..n-1 here, so a size mismatch means a gap
        missing = list(islice((v for v in range(n) if v not in used), 5))
        raise BadVertexIds(f"vertex ids must cover 0..{n - 1}; missing {missing}")

    tree = Tree.from_edges(n, edges)
    logger.debug(f"Parsed tree with n={tree.n}")
    return tree


def load_tree(path) -> Tree:
    """Read a tree file (UTF-8)"""
    return parse_tree(Path(path).read_text(encoding="utf-8"))


def format_tree(tree: Tree) -> str:
    """Serialize a tree in the file format; always writes the 'vertices' header"""
    lines = []
    if tree.n == 1:
        lines.append("# n=1")
    lines.append(f"vertices {tree.n}")
    lines.extend(f"{u} {v}" for u, v in tree.edges)
    return "\n".join(lines) + "\n"


def parse_vertex_set(text: str, n: int) -> VertexSet:
    """Parse a comma-separated id list such as '0,3,4'; the empty string is the empty set"""
    ids = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if not _UINT.fullmatch(token):
            raise ParseError(f"bad vertex id {token!r}")
        ids.append(int(token))
    if len(set(ids)) != len(ids):
        raise ParseError(f"repeated vertex id in {text!r}")
    return VertexSet.of(n, ids)


def _check_pruefer(seq: Sequence[int], n: int) -> None:
    if n < 1:
        raise BadSequence(f"n must be at least 1, got {n}")
    expected = max(n - 2, 0)
    if len(seq) != expected:
        raise BadSequence(f"a Pruefer sequence for n={n} has length {expected}, got {len(seq)}")
    for x in seq:
        if not 0 <= x < n:
            raise BadSequence(f"entry {x} outside 0..{n - 1}")


def pruefer_edges(seq: Sequence[int], n: int) -> List[Tuple[int, int]]:
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]

    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)

    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x) if leaf < x else (x, leaf))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def from_pruefer(seq: Sequence[int], n: int) -> Tree:
    """
    Decode a Pruefer sequence into its labeled tree

    Args:
        seq: length n-2 with entries in 0..n-1 (empty for n <= 2)
        n: vertex count

    Raises:
        BadSequence: length or range violation
    """
    _check_pruefer(seq, n)
    return Tree.from_normalized(n, pruefer_edges(seq, n))


def to_pruefer(tree: Tree) -> List[int]:
    """Encode a tree as its Pruefer sequence (empty for n <= 2)"""
    n = tree.n
    if n <= 2:
        return []

    degree = [len(nbrs) for nbrs in tree.adjacency]
    removed = [False] * n
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)

    seq = []
    for _ in range(n - 2):
        leaf = heapq.heappop(leaves)
        removed[leaf] = True
        parent = next(w for w in tree.adjacency[leaf] if not removed[w])
        seq.append(parent)
        degree[parent] -= 1
        if degree[parent] == 1:
            heapq.heappush(leaves, parent)
    return seq


def relabel(tree: Tree, perm: Sequence[int]) -> Tree:
    """Apply a vertex permutation: vertex v becomes perm[v]"""
    if sorted(perm) != list(range(tree.n)):
        raise ValueError(f"not a permutation of 0..{tree.n - 1}")
    return Tree.from_normalized(tree.n, [tuple(sorted((perm[u], perm[v]))) for u, v in tree.edges])


def bipartition(tree: Tree) -> Bipartition:
    """2-color by breadth-first traversal from vertex 0; side_a is vertex 0's class"""
    color = [-1] * tree.n
    color[0] = 0
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in tree.adjacency[v]:
            if color[w] == -1:
                color[w] = 1 - color[v]
                queue.append(w)

    side_a = VertexSet.of(tree.n, (v for v in range(tree.n) if color[v] == 0))
    return Bipartition(side_a=side_a, side_b=side_a.complement())


def _centers(adjacency: Sequence[Sequence[int]]) -> List[int]:
    n = len(adjacency)
    if n <= 2:
        return list(range(n))

    degree = [len(nbrs) for nbrs in adjacency]
    layer = [v for v in range(n) if degree[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        next_layer = []
        for leaf in layer:
            for w in adjacency[leaf]:
                degree[w] -= 1
                if degree[w] == 1:
                    next_layer.append(w)
        layer = next_layer
    return sorted(layer)


def _rooted_code(adjacency: Sequence[Sequence[int]], root: int, blocked: int = -1) -> str:
    """AHU code of the subtree at root, ignoring the branch through blocked"""
    parent = [-1] * len(adjacency)
    parent[root] = blocked
    order = [root]
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for w in adjacency[v]:
            if w != parent[v]:
                parent[w] = v
                order.append(w)

    codes: Dict[int, str] = {}
    for v in reversed(order):
        child_codes = sorted(codes.pop(w) for w in adjacency[v] if w != parent[v])
        codes[v] = "(" + "".join(child_codes) + ")"
    return codes[root]


def adjacency_code(adjacency: Sequence[Sequence[int]]) -> str:
    """canonical_code on bare neighbor lists"""
    middle = _centers(adjacency)
    if len(middle) == 1:
        return _rooted_code(adjacency, middle[0])
    a, b = middle
    halves = sorted([_rooted_code(adjacency, a, blocked=b), _rooted_code(adjacency, b, blocked=a)])
    return "|".join(halves)


def centers(tree: Tree) -> List[int]:
    """Center vertices (1 or 2) by iterative leaf removal"""
    return _centers(tree.adjacency)


def canonical_code(tree: Tree) -> str:
    """
    AHU canonical code rooted at the center

    Bicentral trees combine the two center-rooted halves, split across the
    center edge, as a sorted pair. Equal codes iff isomorphic trees.
    """
    return adjacency_code(tree.adjacency)
