"""Membership in R^h_T(C) by the recursive formula

    R^h_T(C) = C(h) ∩ ⋂_{(m) ∈ T} ⋃_{s ∈ ω^m} R^{h⌢s}_{T^(m)}(C).

Beyond the domain the scheme is constant (or empty), so only h inside the domain recurse. For a child (m) with
|h| + m past the domain depth every s leaves the domain and the inner union is the union of the leaf values
above h; below that index the union splits into the domain nodes at relative depth m plus the leaves passed on
the way. The self-loop T^(0) = T (full trees and rays of zeros) is a greatest fixpoint and contributes nothing.
"""
from typing import Dict, Optional, Set, Tuple

from borelkit import logging
from borelkit.config.utils_config import LimitEnumeration
from borelkit.exceptions import PreconditionError
from borelkit.ordinal import Ordinal
from borelkit.schemes.setexpr import Subset
from borelkit.suslin.scheme import SuslinScheme, suslin_operation
from borelkit.trees.canonical import canonical_tree_c
from borelkit.trees.expr import (
    CofiniteChildren,
    Explicit,
    FiniteChildren,
    TreeExpr,
    is_empty,
    root_children,
    subtree_at,
    truncate,
)
from borelkit.trees.seq import Seq, seq

logger = logging.get_logger(__name__)


class RtEngine:
    """Evaluates R^h_T(C) as a set, memoized per (h, T)."""

    def __init__(self, scheme: SuslinScheme):
        self.scheme = scheme
        self._memo: Dict[Tuple[Seq, TreeExpr], Subset] = {}
        self._in_progress: Set[Tuple[Seq, TreeExpr]] = set()

    def stabilization_index(self, h: Seq) -> int:
        """m* such that every child (m) with m >= m* only sees values past the domain."""
        return max(self.scheme.depth + 1 - len(h), 0)

    def escape(self, h: Seq, m: int) -> Subset:
        """Union of the leaf values met by some s ∈ ω^m before h⌢s leaves the domain."""
        domain = self.scheme.domain
        return frozenset().union(
            *(self.scheme.values[t] for t in domain.leaves() if t[: len(h)] == h and len(t) < len(h) + m)
        )

    def level(self, h: Seq, m: int, t: TreeExpr) -> Subset:
        """⋃_{s ∈ ω^m} R^{h⌢s}_t(C)."""
        if m == 0:
            return self.value(h, t)
        result = set(self.escape(h, m))
        frontier = [h]
        for _ in range(m):
            frontier = [u + (n,) for u in frontier for n in self.scheme.domain.children(u)]
        for u in frontier:
            result |= self.value(u, t)
        return frozenset(result)

    def value(self, h: Seq, t: TreeExpr) -> Subset:
        h = seq(h)
        if is_empty(t):
            raise PreconditionError("R_T is only evaluated on nonempty trees")
        if h not in self.scheme.domain or self.scheme.domain.is_leaf(h):
            return self.scheme.value(h)
        key = (h, t)
        if key in self._memo:
            return self._memo[key]
        if key in self._in_progress:
            raise AssertionError(f"unexpected cycle while evaluating R at {h}")
        self._in_progress.add(key)
        try:
            result = self._evaluate(h, t)
        finally:
            self._in_progress.discard(key)
        self._memo[key] = result
        return result

    def _evaluate(self, h: Seq, t: TreeExpr) -> Subset:
        result = set(self.scheme.value(h))
        children = root_children(t)
        m_star = self.stabilization_index(h)
        for m in range(m_star):
            if not result:
                break
            if not children.contains(m):
                continue
            sub = subtree_at(t, (m,))
            if m == 0 and sub == t:
                continue
            result &= self.level(h, m, sub)
        if result and _has_child_at_least(children, m_star):
            result &= self.scheme.leaf_union(h)
        return frozenset(result)

    def cache_size(self) -> int:
        return len(self._memo)


def _has_child_at_least(children, bound: int) -> bool:
    if isinstance(children, FiniteChildren):
        return any(n >= bound for n in children.entries)
    if isinstance(children, CofiniteChildren):
        return True
    # InfiniteChildren is infinite by construction
    return True


def _check_point(c: SuslinScheme, x):
    if x not in c.universe:
        raise PreconditionError(f"{x!r} is not an element of the universe")


def rt_member(c: SuslinScheme, t: TreeExpr, x, h: Seq = (), engine: Optional[RtEngine] = None) -> bool:
    """x ∈ R^h_T(C)."""
    _check_point(c, x)
    engine = engine or RtEngine(c)
    return x in engine.value(seq(h), t)


def rt_set(c: SuslinScheme, t: TreeExpr, h: Seq = ()) -> Subset:
    return RtEngine(c).value(seq(h), t)


def r_alpha(
    c: SuslinScheme,
    alpha: Ordinal,
    n: Optional[int] = None,
    enumeration: LimitEnumeration = LimitEnumeration.INTERLEAVED,
) -> Subset:
    """R_alpha(C) = R_{T^c_alpha}(C)."""
    alpha = Ordinal.of(alpha)
    engine = RtEngine(c)
    result = engine.value((), canonical_tree_c(alpha, n, enumeration))
    logger.debug(f"R_{alpha}: {len(result)} points, {engine.cache_size()} memoized (h, T) pairs")
    return result


def is_antitone(c: SuslinScheme, alphas) -> bool:
    """R_alpha(C) shrinks along the given increasing ordinals and always contains A(C)."""
    chain = [r_alpha(c, a) for a in sorted(Ordinal.of(a) for a in alphas)]
    a_of_c = suslin_operation(c)
    return all(b <= a for a, b in zip(chain, chain[1:])) and all(a_of_c <= r for r in chain)


def truncation_cross_check(c: SuslinScheme, t: TreeExpr, depth: int) -> bool:
    """R over t agrees with R over its truncation of width m* + 2 at the root and the given depth."""
    width = RtEngine(c).stabilization_index(()) + 2
    truncated = Explicit(truncate(t, depth, width))
    return rt_set(c, t) == rt_set(c, truncated)

