"""Canonical trees T_alpha and their re-enumerations T^c_alpha."""
from functools import lru_cache
from typing import Optional

from borelkit.config.utils_config import LimitEnumeration
from borelkit.exceptions import PreconditionError
from borelkit.ordinal import Ordinal
from borelkit.trees.expr import CanonicalSeq, Constant, JoinOmega, Point, TreeExpr, graft


@lru_cache(maxsize=None)
def canonical_tree(alpha: Ordinal, enumeration: LimitEnumeration = LimitEnumeration.INTERLEAVED) -> TreeExpr:
    """T_0 = {∅}, T_{a+1} = {∅} ∪ ⋃_n n⌢T_a and T_lambda = {∅} ∪ ⋃_n n⌢T_{pi_lambda(n)}."""
    alpha = Ordinal.of(alpha)
    if alpha.is_zero:
        return Point()
    if alpha.is_successor:
        return JoinOmega(Constant(canonical_tree(alpha.predecessor(), enumeration)))
    return JoinOmega(CanonicalSeq(alpha, enumeration=enumeration))


def canonical_tree_c(
    alpha: Ordinal, n: Optional[int] = None, enumeration: LimitEnumeration = LimitEnumeration.INTERLEAVED
) -> TreeExpr:
    """T^c_alpha = T_{alpha'} for even alpha and T^c_{alpha,n} = {∅} ∪ n⌢T_{alpha'} for odd alpha (n defaults to 1)."""
    alpha = Ordinal.of(alpha)
    base = canonical_tree(alpha.alpha_prime(), enumeration)
    if alpha.is_even:
        if n is not None:
            raise PreconditionError(f"n is only allowed for odd ordinals, got n={n} with {alpha}")
        return base
    if n is None:
        n = 1
    if n < 0:
        raise PreconditionError(f"n should be a natural and not {n}")
    return graft((n,), base)
