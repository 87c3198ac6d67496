"""W^Q_P(G): the largest open subset of Q whose trace on P is G."""
from itertools import product
from typing import Dict, Iterable

from borelkit import logging
from borelkit.exceptions import PreconditionError
from borelkit.fintop.space import FinSpace, Point, PointSet, sorted_points

logger = logging.get_logger(__name__)


def w_operator(q: FinSpace, p: Iterable[Point], g: Iterable[Point]) -> PointSet:
    """⋃{ W open in Q : W ∩ P = G }; G must be open in the subspace P."""
    p = q.check_subset(p, "p")
    g = frozenset(g)
    if not g <= p or not q.subspace(p).is_open(g):
        raise PreconditionError(f"{sorted_points(g)} is not open in the subspace {sorted_points(p)}")
    return frozenset().union(*(w for w in q.opens if w & p == g))


def w_laws(q: FinSpace, p: Iterable[Point]) -> Dict[str, bool]:
    """Monotonicity, intersections, Int cl for dense P and closed complements, over every pair of open G, G'.

    Compact subsets of the Hausdorff setting are closed; here the complement law is checked for every C ⊆ P that
    is closed in Q.
    """
    p = q.check_subset(p, "p")
    sub = q.subspace(p)
    w = {g: w_operator(q, p, g) for g in sub.opens}
    laws = {"trace": all(w[g] & p == g and q.is_open(w[g]) for g in w)}
    laws["monotone"] = all(w[g] <= w[h] for g, h in product(w, w) if g <= h)
    laws["intersection"] = all(w[g & h] == w[g] & w[h] for g, h in product(w, w))
    if q.is_dense(p):
        laws["within interior of closure"] = all(w[g] <= q.interior(q.closure(g)) for g in w)
    closed_parts = [c for c in sub.opens if q.is_closed(p - c)]
    laws["closed complement"] = all(w_operator(q, p, c) == q.points - (p - c) for c in closed_parts)
    failed = [name for name, ok in laws.items() if not ok]
    if failed:
        logger.warning(f"W operator laws failed: {failed}")
    return laws
