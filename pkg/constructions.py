"""
Constructive procedures on global alliances

- smaller_side_offensive: the smaller 2-coloring class is a global offensive
  alliance of size at most n/2
- edge_partition / defensive_certificate: the edge counting argument for a
  global defensive alliance S (edges inside S, across, inside Y = V - S)
- augment_to_offensive: S plus a minimum vertex cover of the forest induced
  on Y, which leaves no edge inside the complement
"""

import heapq
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from graph_core import AllianceError, Tree, VertexSet, bipartition
from alliance_predicates import (
    defensive_failures,
    dominated_mask,
    is_global_offensive,
    mask_is_global_defensive,
)

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


class DegenerateInstance(AllianceError):
    """The one-vertex tree, where the constructions do not apply"""


class NotGlobalDefensive(AllianceError):
    """Input set is not a global defensive alliance"""

    def __init__(self, message, failed: Optional[List[str]] = None):
        super().__init__(message)
        self.failed = failed or []


@dataclass(frozen=True)
class EdgePartition:
    """Tree edges split by how many endpoints lie in S"""
    e_s: Tuple[Edge, ...]
    e_b: Tuple[Edge, ...]
    e_y: Tuple[Edge, ...]
    k: int
    n: int

    def as_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "e_s": [list(e) for e in self.e_s],
            "e_b": [list(e) for e in self.e_b],
            "e_y": [list(e) for e in self.e_y],
        }


@dataclass(frozen=True)
class InequalityCheck:
    """One instantiated inequality lhs <relation> rhs"""
    lhs: int
    relation: str  # ">=" or "<="
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs if self.relation == ">=" else self.lhs <= self.rhs

    def as_dict(self) -> Dict[str, Any]:
        return {"lhs": self.lhs, "relation": self.relation, "rhs": self.rhs, "holds": self.holds}


@dataclass(frozen=True)
class CertificateReport:
    """
    Edge counting certificate for a global defensive alliance

    ineq_degree:     2|E_S| + k >= |E_B|
    ineq_domination: |E_B| >= n - k
    ineq_star:       2|E_Y| <= 4k - n - 2
    case_bound:      6|E_Y| <= n - 2 when 3k <= n + 1, otherwise None
    """
    partition: EdgePartition
    ineq_degree: InequalityCheck
    ineq_domination: InequalityCheck
    ineq_star: InequalityCheck
    case: int
    case_bound: Optional[InequalityCheck]

    @property
    def all_hold(self) -> bool:
        return self.ineq_degree.holds and self.ineq_domination.holds and self.ineq_star.holds

    def as_dict(self) -> Dict[str, Any]:
        return {
            "partition": self.partition.as_dict(),
            "counts": {
                "e_s": len(self.partition.e_s),
                "e_b": len(self.partition.e_b),
                "e_y": len(self.partition.e_y),
            },
            "ineq_degree": self.ineq_degree.as_dict(),
            "ineq_domination": self.ineq_domination.as_dict(),
            "ineq_star": self.ineq_star.as_dict(),
            "case": self.case,
            "case_bound": self.case_bound.as_dict() if self.case_bound else None,
            "all_hold": self.all_hold,
        }


@dataclass(frozen=True)
class AugmentResult:
    """Outcome of augmenting a global defensive alliance"""
    source: VertexSet
    result: VertexSet
    added: VertexSet
    e_y: int
    offensive_ok: bool

    @property
    def bound_ok(self) -> bool:
        """|added| <= |E_Y| and 2|added| <= max(0, 4k - n - 2)"""
        k, n = len(self.source), self.source.n
        return len(self.added) <= self.e_y and 2 * len(self.added) <= max(0, 4 * k - n - 2)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "input": self.source.as_list(),
            "result": self.result.as_list(),
            "added": self.added.as_list(),
            "e_y": self.e_y,
            "offensive_ok": self.offensive_ok,
            "bound_ok": self.bound_ok,
        }


def proof_case(n: int, k: int) -> int:
    """Case 1 when k <= n/3 + 1/3 (scaled: 3k <= n + 1), else Case 2"""
    return 1 if 3 * k <= n + 1 else 2


def smaller_side_offensive(tree: Tree) -> VertexSet:
    """
    Smaller side of the 2-coloring (tie: the side holding vertex 0)

    Raises:
        DegenerateInstance: n = 1, where neither side dominates
    """
    if tree.n == 1:
        raise DegenerateInstance("the one-vertex tree has no dominating bipartition side")
    sides = bipartition(tree)
    side = sides.side_a if len(sides.side_a) <= len(sides.side_b) else sides.side_b
    logger.debug(f"Smaller side of n={tree.n}: {side.as_list()}")
    return side


def edge_partition(tree: Tree, s: VertexSet) -> EdgePartition:
    tree.check_set(s)
    e_s, e_b, e_y = [], [], []
    for u, v in tree.edges:
        inside = (u in s) + (v in s)
        if inside == 2:
            e_s.append((u, v))
        elif inside == 1:
            e_b.append((u, v))
        else:
            e_y.append((u, v))
    return EdgePartition(e_s=tuple(e_s), e_b=tuple(e_b), e_y=tuple(e_y), k=len(s), n=tree.n)


def require_global_defensive(tree: Tree, s: VertexSet) -> None:
    """Raise NotGlobalDefensive naming the failed predicate(s)"""
    tree.check_set(s)
    if mask_is_global_defensive(tree, s.mask):
        return

    failed, details = [], []
    undominated = tree.full_mask & ~dominated_mask(tree, s.mask)
    if undominated:
        failed.append("dominating")
        details.append(f"undominated {VertexSet(tree.n, undominated).as_list()}")
    weak = defensive_failures(tree, s.mask)
    if weak:
        failed.append("defensive")
        details.append(f"defensive condition fails at {weak}")
    raise NotGlobalDefensive(
        f"{s.as_list()} is not a global defensive alliance: {'; '.join(details)}",
        failed=failed,
    )


def defensive_certificate(tree: Tree, s: VertexSet) -> CertificateReport:
    """
    Instantiate the edge counting inequalities for a global defensive alliance

    Raises:
        NotGlobalDefensive: s fails domination and/or the defensive condition
    """
    require_global_defensive(tree, s)
    part = edge_partition(tree, s)
    n, k = part.n, part.k
    es, eb, ey = len(part.e_s), len(part.e_b), len(part.e_y)

    case = proof_case(n, k)
    report = CertificateReport(
        partition=part,
        ineq_degree=InequalityCheck(2 * es + k, ">=", eb),
        ineq_domination=InequalityCheck(eb, ">=", n - k),
        ineq_star=InequalityCheck(2 * ey, "<=", 4 * k - n - 2),
        case=case,
        case_bound=InequalityCheck(6 * ey, "<=", n - 2) if case == 1 else None,
    )
    if not report.all_hold:
        logger.error(f"Certificate inequality failed for S={s.as_list()} on n={n}: {report.as_dict()}")
    return report


def min_vertex_cover_forest(tree: Tree, y: VertexSet) -> VertexSet:
    """
    Minimum vertex cover of the forest induced on y

    Leaf-neighbor greedy: take the lowest-indexed leaf of the remaining
    induced forest, put its neighbor in the cover, delete both. Isolated
    vertices are never taken.
    """
    tree.check_set(y)
    alive = set(y.members)
    degree = {v: sum(1 for w in tree.adjacency[v] if w in alive) for v in alive}
    leaves = [v for v in alive if degree[v] == 1]
    heapq.heapify(leaves)

    cover = []
    while leaves:
        leaf = heapq.heappop(leaves)
        if leaf not in alive or degree[leaf] != 1:
            continue
        parent = next(w for w in tree.adjacency[leaf] if w in alive)
        cover.append(parent)
        alive.discard(leaf)
        alive.discard(parent)
        for w in tree.adjacency[parent]:
            if w in alive:
                degree[w] -= 1
                if degree[w] == 1:
                    heapq.heappush(leaves, w)
    return VertexSet.of(tree.n, cover)


def augment_with_report(tree: Tree, s: VertexSet) -> AugmentResult:
    """
    Break every edge inside Y = V - S by moving a cover vertex into S

    Raises:
        DegenerateInstance: n = 1
        NotGlobalDefensive: s is not a global defensive alliance
    """
    if tree.n == 1:
        raise DegenerateInstance("augmentation needs n >= 2")
    require_global_defensive(tree, s)

    y = s.complement()
    added = min_vertex_cover_forest(tree, y)
    result = s | added
    e_y = len(edge_partition(tree, s).e_y)

    outcome = AugmentResult(
        source=s,
        result=result,
        added=added,
        e_y=e_y,
        offensive_ok=is_global_offensive(tree, result),
    )
    logger.debug(f"Augmented {s.as_list()} by {added.as_list()} (|E_Y|={e_y})")
    return outcome


def augment_to_offensive(tree: Tree, s: VertexSet) -> VertexSet:
    """S' = S plus a minimum cover of the forest induced on V - S"""
    return augment_with_report(tree, s).result


def pruned_global_defensive(tree: Tree) -> VertexSet:
    """
    Deterministic global defensive alliance with no removable single vertex

    Starts from V and drops vertices in ascending order while the remainder
    stays a global defensive alliance, repeating until stable. Not a bound
    on the alliance number.
    """
    mask = tree.full_mask
    changed = True
    while changed:
        changed = False
        for v in range(tree.n):
            bit = 1 << v
            if mask & bit and mask_is_global_defensive(tree, mask & ~bit):
                mask &= ~bit
                changed = True
    return VertexSet(tree.n, mask)
