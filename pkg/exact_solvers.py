"""
Exact solvers for the global alliance numbers

Candidate sets are scanned by ascending cardinality and, within one
cardinality, in lexicographic order of sorted vertex indices, so the first
hit is a minimum alliance and the witness is deterministic.
"""

import logging
import time
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Any, Callable, Dict, Optional

from config import get_max_exact_n
from graph_core import AllianceError, Tree, VertexSet
from alliance_predicates import mask_is_global_defensive, mask_is_global_offensive

logger = logging.getLogger(__name__)


class InstanceTooLarge(AllianceError):
    """Instance above an exact-search or enumeration cap"""


class SolveKind(Enum):
    """Alliance number being computed"""
    DEFENSIVE = "defensive"
    OFFENSIVE = "offensive"


@dataclass(frozen=True)
class SolveResult:
    """Minimum global alliance with its witness"""
    value: int
    witness: VertexSet
    kind: SolveKind
    explored: int

    def as_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "value": self.value,
            "witness": self.witness.as_list(),
            "explored": self.explored,
        }


def check_exact_cap(tree: Tree, max_exact_n: Optional[int] = None) -> int:
    """Raise InstanceTooLarge when the tree is above the exact-size cap; return the cap"""
    cap = get_max_exact_n() if max_exact_n is None else max_exact_n
    if tree.n > cap:
        raise InstanceTooLarge(
            f"n={tree.n} exceeds the exact-solver cap of {cap}; "
            f"raise it with --max-exact-n (or MAX_EXACT_N)"
        )
    return cap


def _first_hit(tree: Tree, accept: Callable[[Tree, int], bool], max_size: int):
    bits = [1 << v for v in range(tree.n)]
    explored = 0
    for size in range(1, max_size + 1):
        for combo in combinations(range(tree.n), size):
            explored += 1
            mask = 0
            for v in combo:
                mask |= bits[v]
            if accept(tree, mask):
                return mask, explored
    return None, explored


def _solve(tree: Tree, kind: SolveKind, max_exact_n: Optional[int]) -> SolveResult:
    check_exact_cap(tree, max_exact_n)
    start_time = time.time()

    if kind is SolveKind.DEFENSIVE:
        accept = mask_is_global_defensive
        max_size = tree.n
    else:
        accept = mask_is_global_offensive
        # the smaller bipartition side is a global offensive alliance for n >= 2
        max_size = tree.n // 2 if tree.n >= 2 else tree.n

    mask, explored = _first_hit(tree, accept, max_size)
    if mask is None:
        raise RuntimeError(f"no global {kind.value} alliance within size {max_size} on n={tree.n}")

    witness = VertexSet(tree.n, mask)
    logger.debug(
        f"gamma_{kind.value[0]}={len(witness)} on n={tree.n}, witness {witness.as_list()}, "
        f"{explored} candidates in {time.time() - start_time:.3f}s"
    )
    return SolveResult(value=len(witness), witness=witness, kind=kind, explored=explored)


def gamma_a(tree: Tree, max_exact_n: Optional[int] = None) -> SolveResult:
    """
    Global defensive alliance number with its first minimum witness

    Raises:
        InstanceTooLarge: n above the exact-size cap
    """
    return _solve(tree, SolveKind.DEFENSIVE, max_exact_n)


def gamma_o(tree: Tree, max_exact_n: Optional[int] = None) -> SolveResult:
    """
    Global offensive alliance number with its first minimum witness

    Raises:
        InstanceTooLarge: n above the exact-size cap
    """
    return _solve(tree, SolveKind.OFFENSIVE, max_exact_n)


def solve(tree: Tree, kind: SolveKind, max_exact_n: Optional[int] = None) -> SolveResult:
    return _solve(tree, kind, max_exact_n)
