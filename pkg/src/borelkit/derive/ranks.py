"""Ranks r_l, r_i and r_iie of finitely described trees.

The rank of a tree depends only on the ranks of the subtrees above its root's children, so ranks are computed by
structural recursion over the child-rank profile (see ``RankProfile.combine``). Results are memoized on the
structural hash of the expression; the cache is transparent.
"""
from functools import lru_cache

from borelkit import logging
from borelkit.config.utils_config import DerivativeKind
from borelkit.exceptions import IllFoundedTreeError, UnsupportedQueryError
from borelkit.ordinal import Ordinal
from borelkit.trees.expr import (
    Explicit,
    Full,
    Graft,
    JoinFinite,
    JoinOmega,
    Point,
    Ray,
    TreeExpr,
    graft,
    is_empty,
    materialize,
    root_children,
    subtree_at,
)
from borelkit.trees.rank import Rank, RankProfile

logger = logging.get_logger(__name__)


@lru_cache(maxsize=None)
def rank_value(kind: DerivativeKind, t: TreeExpr) -> Rank:
    """The rank, with ``Rank.unbounded()`` standing for omega_1."""
    if is_empty(t):
        return Rank.empty()
    if isinstance(t, Point):
        return Rank.of(0)
    if isinstance(t, Full):
        return Rank.unbounded()
    if isinstance(t, Ray):
        # a single branch has no infinite antichain
        return Rank.of(0) if kind is DerivativeKind.IIE else Rank.unbounded()
    if isinstance(t, Explicit):
        return Rank.of(t.tree.height()) if kind is DerivativeKind.L else Rank.of(0)
    if isinstance(t, Graft):
        sub = rank_value(kind, t.sub)
        if sub.is_empty:
            sub = Rank.of(0)
        return sub.plus(len(t.head)) if kind is DerivativeKind.L else sub
    if isinstance(t, JoinOmega):
        return t.family.rank_profile(kind, rank_value).combine(kind)
    if isinstance(t, JoinFinite):
        ranks = tuple(rank_value(kind, graft(f[1:], sub)) for f, sub in t.branches)
        return RankProfile(finite=ranks).combine(kind)
    raise UnsupportedQueryError(f"unknown tree expression {t!r}")


def is_well_founded(t: TreeExpr) -> bool:
    return not rank_value(DerivativeKind.L, t).is_unbounded


def naive_leaf_rank(tree) -> int:
    """Number of leaf-removal rounds before a finite tree becomes empty, minus one."""
    nodes = set(tree.nodes)
    rounds = -1
    while nodes:
        parents = {s[:-1] for s in nodes if s}
        nodes = {s for s in nodes if s in parents}
        rounds += 1
    return rounds


def leaf_rank_by_formula(t: TreeExpr) -> Rank:
    """r_l(T) = sup { r_l(T^(n)) + 1 : (n) ∈ T }, unfolded along finite child lists."""
    if is_empty(t):
        return Rank.empty()
    tree = materialize(t)
    if tree is not None:
        return Rank.of(naive_leaf_rank(tree))
    children = root_children(t)
    if not children.is_finite:
        if isinstance(t, JoinOmega):
            return t.family.rank_profile(DerivativeKind.L, lambda _, sub: leaf_rank_by_formula(sub)).combine(
                DerivativeKind.L
            )
        return rank_value(DerivativeKind.L, t)
    ranks = tuple(leaf_rank_by_formula(subtree_at(t, (n,))) for n in children.entries)
    return RankProfile(finite=ranks).combine(DerivativeKind.L)


def rank(kind: DerivativeKind, t: TreeExpr) -> Rank:
    """r_kind(T); raises IllFoundedTreeError when r_l or r_i would be omega_1."""
    value = rank_value(kind, t)
    if value.is_unbounded and kind is not DerivativeKind.IIE:
        raise IllFoundedTreeError(f"r_{kind.name.lower()} is only defined for well-founded trees")
    if kind is DerivativeKind.L:
        second = leaf_rank_by_formula(t)
        if second != value:
            raise AssertionError(f"leaf rank disagreement: structural {value} vs recursive formula {second}")
    logger.debug(f"r_{kind.name.lower()} = {value} ({rank_value.cache_info().currsize} cached ranks)")
    return value


def rank_ordinal(kind: DerivativeKind, t: TreeExpr) -> Ordinal:
    value = rank(kind, t)
    if value.is_empty or value.is_unbounded:
        raise UnsupportedQueryError(f"rank {value} is not an ordinal")
    return value.value


__all__ = ["rank", "rank_value", "rank_ordinal", "is_well_founded", "leaf_rank_by_formula", "naive_leaf_rank"]
