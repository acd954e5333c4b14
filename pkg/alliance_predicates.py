"""
Alliance predicates

Closed neighborhoods, boundary, domination and the defensive / offensive
alliance conditions with their global (dominating) variants. All counts are
exact integers; sets are evaluated as bitmasks over Tree.closed_masks.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List

from graph_core import Tree, VertexSet

logger = logging.getLogger(__name__)


class PredicateKind(Enum):
    """Predicates accepted by evaluate() and the verify command"""
    DOMINATING = "dominating"
    DEFENSIVE = "defensive"
    OFFENSIVE = "offensive"
    GLOBAL_DEFENSIVE = "global-defensive"
    GLOBAL_OFFENSIVE = "global-offensive"


@dataclass(frozen=True)
class NeighborhoodView:
    """Vertex v together with N[v]"""
    vertex: int
    closed: VertexSet


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# Mask-level checks shared with the exact solvers

def dominated_mask(tree: Tree, s_mask: int) -> int:
    """S together with its boundary"""
    masks = tree.closed_masks
    covered = 0
    for v in _bits(s_mask):
        covered |= masks[v]
    return covered


def defensive_failures(tree: Tree, s_mask: int) -> List[int]:
    masks, sizes = tree.closed_masks, tree.closed_sizes
    return [v for v in _bits(s_mask) if 2 * (masks[v] & s_mask).bit_count() < sizes[v]]


def offensive_failures(tree: Tree, s_mask: int) -> List[int]:
    masks, sizes = tree.closed_masks, tree.closed_sizes
    rim = dominated_mask(tree, s_mask) & ~s_mask
    return [v for v in _bits(rim) if 2 * (masks[v] & s_mask).bit_count() < sizes[v]]


def mask_is_global_defensive(tree: Tree, s_mask: int) -> bool:
    masks, sizes = tree.closed_masks, tree.closed_sizes
    covered = 0
    for v in _bits(s_mask):
        covered |= masks[v]
    if covered != tree.full_mask:
        return False
    for v in _bits(s_mask):
        if 2 * (masks[v] & s_mask).bit_count() < sizes[v]:
            return False
    return True


def mask_is_global_offensive(tree: Tree, s_mask: int) -> bool:
    masks, sizes = tree.closed_masks, tree.closed_sizes
    full = tree.full_mask
    covered = 0
    for v in _bits(s_mask):
        covered |= masks[v]
    if covered != full:
        return False
    for v in _bits(full & ~s_mask):
        if 2 * (masks[v] & s_mask).bit_count() < sizes[v]:
            return False
    return True


# Set-level API

def closed_neighborhood(tree: Tree, v: int) -> VertexSet:
    """N[v] = {v} plus the neighbors of v"""
    tree.check_vertex(v)
    return VertexSet(tree.n, tree.closed_masks[v])


def neighborhood_view(tree: Tree, v: int) -> NeighborhoodView:
    return NeighborhoodView(vertex=v, closed=closed_neighborhood(tree, v))


def boundary(tree: Tree, s: VertexSet) -> VertexSet:
    """Vertices outside S adjacent to at least one vertex of S"""
    tree.check_set(s)
    return VertexSet(tree.n, dominated_mask(tree, s.mask) & ~s.mask)


def is_dominating(tree: Tree, s: VertexSet) -> bool:
    tree.check_set(s)
    return dominated_mask(tree, s.mask) == tree.full_mask


def is_defensive(tree: Tree, s: VertexSet) -> bool:
    """|N[v] ∩ S| >= |N[v] ∩ (V - S)| at every v in S; vacuous for the empty set"""
    tree.check_set(s)
    return not defensive_failures(tree, s.mask)


def is_offensive(tree: Tree, s: VertexSet) -> bool:
    """|N[v] ∩ S| >= |N[v] - S| at every boundary vertex v (v itself counts outside)"""
    tree.check_set(s)
    return not offensive_failures(tree, s.mask)


def is_global_defensive(tree: Tree, s: VertexSet) -> bool:
    tree.check_set(s)
    return mask_is_global_defensive(tree, s.mask)


def is_global_offensive(tree: Tree, s: VertexSet) -> bool:
    tree.check_set(s)
    return mask_is_global_offensive(tree, s.mask)


def alliance_violations(tree: Tree, s: VertexSet, kind: PredicateKind) -> List[int]:
    """
    Vertices at which a predicate fails

    Undominated vertices for domination, members of S for the defensive
    condition, boundary vertices for the offensive condition; the global
    variants report both lists merged.
    """
    tree.check_set(s)
    undominated = [v for v in _bits(tree.full_mask & ~dominated_mask(tree, s.mask))]

    if kind is PredicateKind.DOMINATING:
        return undominated
    if kind is PredicateKind.DEFENSIVE:
        return defensive_failures(tree, s.mask)
    if kind is PredicateKind.OFFENSIVE:
        return offensive_failures(tree, s.mask)
    if kind is PredicateKind.GLOBAL_DEFENSIVE:
        return sorted(set(undominated) | set(defensive_failures(tree, s.mask)))
    return sorted(set(undominated) | set(offensive_failures(tree, s.mask)))


def evaluate(tree: Tree, s: VertexSet, kind: PredicateKind) -> bool:
    """Dispatch a predicate by kind"""
    checks = {
        PredicateKind.DOMINATING: is_dominating,
        PredicateKind.DEFENSIVE: is_defensive,
        PredicateKind.OFFENSIVE: is_offensive,
        PredicateKind.GLOBAL_DEFENSIVE: is_global_defensive,
        PredicateKind.GLOBAL_OFFENSIVE: is_global_offensive,
    }
    result = checks[kind](tree, s)
    logger.debug(f"{kind.value} on {s.as_list()}: {result}")
    return result
