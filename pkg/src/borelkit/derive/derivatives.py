"""Derivatives D_l, D_i, D_iie and their transfinite iterates.

A node t survives D^alpha exactly when the rank of T^t is at least alpha, so D^alpha is pushed through the
expression: the root is kept iff the rank of the whole tree is >= alpha, and each child subtree is derived in turn.
Limit stages need no special treatment because the rank test is exact at every ordinal.
"""
from functools import lru_cache
from typing import Dict

from borelkit import logging
from borelkit.config.utils_config import DerivativeKind
from borelkit.derive.ranks import rank_value
from borelkit.exceptions import UnsupportedQueryError
from borelkit.ordinal import ONE, Ordinal, left_subtract
from borelkit.trees.expr import (
    Empty,
    Explicit,
    Full,
    Graft,
    JoinFinite,
    JoinOmega,
    Point,
    Ray,
    TreeExpr,
    explicit,
    graft,
    is_empty,
    join_finite,
    join_omega,
)
from borelkit.trees.finite import FiniteTree
from borelkit.trees.seq import Seq

logger = logging.get_logger(__name__)


def subtree_heights(tree: FiniteTree) -> Dict[Seq, int]:
    """Leaf rank of every node of a finite tree."""
    heights: Dict[Seq, int] = {}
    for s in sorted(tree.nodes, key=len, reverse=True):
        heights.setdefault(s, 0)
        if s:
            heights[s[:-1]] = max(heights.get(s[:-1], 0), heights[s] + 1)
    return heights


def derive_finite_tree(kind: DerivativeKind, tree: FiniteTree, alpha: Ordinal = ONE) -> FiniteTree:
    """Direct scan: on a finite tree only D_l removes anything short of everything."""
    alpha = Ordinal.of(alpha)
    if alpha.is_zero:
        return tree
    if kind is not DerivativeKind.L or not alpha.is_finite:
        return FiniteTree()
    heights = subtree_heights(tree)
    k = alpha.to_int()
    return FiniteTree(frozenset(s for s, h in heights.items() if h >= k))


@lru_cache(maxsize=None)
def iterate(kind: DerivativeKind, t: TreeExpr, alpha: Ordinal) -> TreeExpr:
    """D^alpha(T) as a tree expression."""
    alpha = Ordinal.of(alpha)
    if alpha.is_zero:
        return t
    if not rank_value(kind, t).at_least(alpha):
        return Empty()
    if isinstance(t, (Full, Ray)):
        # only reachable when the rank is unbounded; both are fixed points
        return t
    if isinstance(t, Point):
        raise AssertionError("a point has rank 0 and cannot survive a positive derivative")
    if isinstance(t, Explicit):
        return explicit(derive_finite_tree(kind, t.tree, alpha))
    if isinstance(t, Graft):
        return _iterate_graft(kind, t, alpha)
    if isinstance(t, JoinOmega):
        return join_omega(t.family.derived(kind, alpha, iterate))
    if isinstance(t, JoinFinite):
        branches = []
        for f, sub in t.branches:
            derived = iterate(kind, graft(f[1:], sub), alpha)
            if not is_empty(derived):
                branches.append(((f[0],), derived))
        return join_finite(branches)
    raise UnsupportedQueryError(f"unknown tree expression {t!r}")


def _iterate_graft(kind: DerivativeKind, t: Graft, alpha: Ordinal) -> TreeExpr:
    sub = Point() if is_empty(t.sub) else t.sub
    if kind is not DerivativeKind.L:
        return graft(t.head, iterate(kind, sub, alpha))
    sub_rank = rank_value(kind, sub)
    if sub_rank.at_least(alpha):
        return graft(t.head, iterate(kind, sub, alpha))
    # the nodes of sub are gone; a prefix p of the head keeps leaf rank sub_rank + (|head| - |p|)
    j = left_subtract(sub_rank.value, alpha).to_int()
    return graft(t.head[: len(t.head) - j], Point())


def derive(kind: DerivativeKind, t: TreeExpr) -> TreeExpr:
    return iterate(kind, t, ONE)


def derive_l(t: TreeExpr) -> TreeExpr:
    return derive(DerivativeKind.L, t)


def derive_i(t: TreeExpr) -> TreeExpr:
    return derive(DerivativeKind.I, t)


def derive_iie(t: TreeExpr) -> TreeExpr:
    return derive(DerivativeKind.IIE, t)


def cache_info():
    info = iterate.cache_info()
    logger.debug(f"derivative cache: {info.currsize} entries, {info.hits} hits")
    return info
