"""Zoom spaces Z(Y, X): every isolated point i of Y listed in X is replaced by a space X_i.

Points of the zoom are tagged tuples: (p,) for a point p of Y that stays, (i, q) for the point q of X_i. The basis
consists of the open sets of each X_i and of V_U = (U minus the zoomed points) ∪ ⋃{ X_i : i ∈ U zoomed } for U open
in Y.
"""
from dataclasses import dataclass, field
from typing import Dict, Mapping

from borelkit import logging
from borelkit.exceptions import PreconditionError
from borelkit.fintop.space import (
    FinSpace,
    Point,
    PointSet,
    generate_topology,
    is_continuous,
    is_homeomorphism,
    is_open_map,
    is_surjective,
    restrict_map,
    sorted_points,
)

logger = logging.get_logger(__name__)


@dataclass(frozen=True)
class ZoomSpace:
    space: FinSpace
    base: FinSpace
    parts: Mapping[Point, FinSpace] = field(hash=False)
    quotient: Mapping[Point, Point] = field(hash=False, compare=False)

    def part(self, i: Point) -> PointSet:
        """X_i as a subset of the zoom."""
        return frozenset((i, q) for q in self.parts[i].points)

    def basic_set(self, u) -> PointSet:
        """V_U for U open in the base."""
        u = frozenset(u)
        if not self.base.is_open(u):
            raise PreconditionError(f"{sorted_points(u)} is not open in the base space")
        kept = frozenset((p,) for p in u if p not in self.parts)
        return kept.union(*(self.part(i) for i in u if i in self.parts))

    def postconditions(self) -> Dict[str, bool]:
        return {
            "quotient continuous": is_continuous(self.quotient, self.space, self.base),
            "quotient open": is_open_map(self.quotient, self.space, self.base),
            "quotient surjective": is_surjective(self.quotient, self.base),
            "parts open": all(self.space.is_open(self.part(i)) for i in self.parts),
            # X_i is clopen exactly when {i} is closed in the base, which the Hausdorff setting guarantees
            "parts closed iff base point closed": all(
                self.space.is_closed(self.part(i)) == self.base.is_closed({i}) for i in self.parts
            ),
            "parts embedded": all(
                self.space.subspace(self.part(i)).opens == frozenset(_tag(i, u) for u in self.parts[i].opens)
                for i in self.parts
            ),
        }


def _tag(i: Point, u) -> PointSet:
    return frozenset((i, q) for q in u)


def zoom_space(y: FinSpace, xs: Mapping[Point, FinSpace]) -> ZoomSpace:
    isolated = y.isolated_points()
    for i, x in xs.items():
        if i not in isolated:
            raise PreconditionError(f"{i!r} is not an isolated point of the base space")
        if not x.points:
            raise PreconditionError(f"the space zoomed into {i!r} should be nonempty")
    points = frozenset((p,) for p in y.points if p not in xs)
    points |= frozenset((i, q) for i, x in xs.items() for q in x.points)
    quotient = {z: z[0] for z in points}
    partial = ZoomSpace(FinSpace(points, frozenset({frozenset(), points})), y, dict(xs), quotient)
    basis = [_tag(i, u) for i, x in xs.items() for u in x.opens]
    basis += [partial.basic_set(u) for u in y.opens]
    zoom = ZoomSpace(generate_topology(points, basis), y, dict(xs), quotient)
    failed = [name for name, ok in zoom.postconditions().items() if not ok]
    assert not failed, f"zoom space postconditions failed: {failed}"
    logger.debug(f"zoom of a {len(y)}-point space over {len(xs)} isolated points: {len(points)} points")
    return zoom


def v_algebra_holds(zoom: ZoomSpace) -> bool:
    """V_{U ∩ U'} = V_U ∩ V_U' and V_{U ∪ U'} = V_U ∪ V_U' over all pairs of open sets of the base."""
    opens = list(zoom.base.opens)
    for u in opens:
        for v in opens:
            if zoom.basic_set(u & v) != zoom.basic_set(u) & zoom.basic_set(v):
                return False
            if zoom.basic_set(u | v) != zoom.basic_set(u) | zoom.basic_set(v):
                return False
    return True


@dataclass(frozen=True)
class ClosedCopy:
    points: PointSet
    section: Mapping[Point, Point] = field(hash=False)
    homeomorphic: bool
    closed: bool
    section_is_identity: bool


def closed_copy(zoom: ZoomSpace, selector: Mapping[Point, Point]) -> ClosedCopy:
    """Y_s = Y' ∪ s(I) for a selector s picking one point of every X_i.

    The restriction of the quotient to Y_s is always a homeomorphism onto Y. Y_s is closed when every selected
    point is closed in its part; in the Hausdorff setting that is automatic, here it is reported.
    """
    if set(selector) != set(zoom.parts):
        raise PreconditionError("a selector picks exactly one point of every zoomed part")
    for i, q in selector.items():
        if q not in zoom.parts[i].points:
            raise PreconditionError(f"the selector picks {q!r} outside of X_{i!r}")
    points = frozenset((p,) for p in zoom.base.points if p not in zoom.parts)
    points |= frozenset((i, q) for i, q in selector.items())
    f = restrict_map(zoom.quotient, points)
    section = {p: ((p,) if p not in zoom.parts else (p, selector[p])) for p in zoom.base.points}
    return ClosedCopy(
        points=points,
        section=section,
        homeomorphic=is_homeomorphism(f, zoom.space.subspace(points), zoom.base),
        closed=zoom.space.is_closed(points),
        section_is_identity=all(zoom.quotient[section[p]] == p for p in zoom.base.points),
    )
