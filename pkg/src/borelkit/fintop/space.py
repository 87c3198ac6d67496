"""Finite topological spaces.

A finite topology is determined by the minimal open neighbourhood U_x of every point, equivalently by the
specialization preorder x <= y iff y ∈ U_x (every open set containing x contains y). Open sets are the unions of
minimal neighbourhoods, i.e. the up-sets of the preorder. No separation axiom is assumed: a finite T_1 space is
discrete.
"""
from dataclasses import dataclass, field
from itertools import chain, combinations
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, Iterator, List, Mapping, Tuple

import networkx as nx

from borelkit import logging
from borelkit.exceptions import PreconditionError

logger = logging.get_logger(__name__)

Point = Hashable
PointSet = FrozenSet[Point]

KURATOWSKI_EXHAUSTIVE_POINTS = 10


def point_key(p) -> str:
    return repr(p)


def sorted_points(points: Iterable[Point]) -> List[Point]:
    return sorted(points, key=point_key)


def all_subsets(points: Iterable[Point]) -> Iterator[PointSet]:
    points = sorted_points(points)
    return (frozenset(c) for c in chain.from_iterable(combinations(points, k) for k in range(len(points) + 1)))


@dataclass(frozen=True)
class FinSpace:
    points: PointSet
    opens: FrozenSet[PointSet]
    _neighbourhoods: Dict[Point, PointSet] = field(default=None, init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        points = frozenset(self.points)
        opens = frozenset(frozenset(u) for u in self.opens)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "opens", opens)
        if frozenset() not in opens or points not in opens:
            raise PreconditionError("a topology should contain the empty set and the whole space")
        stray = [u for u in opens if not u <= points]
        if stray:
            raise PreconditionError(f"open sets should be subsets of the points, got {sorted_points(stray[0])}")
        for u, v in combinations(opens, 2):
            if u | v not in opens or u & v not in opens:
                raise PreconditionError(
                    f"opens should be closed under unions and intersections, {sorted_points(u)} and "
                    f"{sorted_points(v)} are not"
                )
        neighbourhoods = {x: frozenset.intersection(*(u for u in opens if x in u)) for x in points}
        object.__setattr__(self, "_neighbourhoods", neighbourhoods)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, x) -> bool:
        return x in self.points

    def check_subset(self, s: Iterable[Point], name: str = "subset") -> PointSet:
        s = frozenset(s)
        if not s <= self.points:
            raise PreconditionError(f"{name} has points outside the space: {sorted_points(s - self.points)}")
        return s

    def neighbourhood(self, x: Point) -> PointSet:
        """The smallest open set containing x."""
        return self._neighbourhoods[x]

    def is_open(self, s: Iterable[Point]) -> bool:
        return frozenset(s) in self.opens

    def is_closed(self, s: Iterable[Point]) -> bool:
        return self.points - frozenset(s) in self.opens

    def is_clopen(self, s: Iterable[Point]) -> bool:
        return self.is_open(s) and self.is_closed(s)

    def interior(self, s: Iterable[Point]) -> PointSet:
        s = self.check_subset(s)
        return frozenset(x for x in s if self.neighbourhood(x) <= s)

    def closure(self, s: Iterable[Point]) -> PointSet:
        s = self.check_subset(s)
        return frozenset(x for x in self.points if self.neighbourhood(x) & s)

    def is_dense(self, s: Iterable[Point]) -> bool:
        return self.closure(s) == self.points

    def isolated_points(self) -> PointSet:
        return frozenset(x for x in self.points if self.neighbourhood(x) == {x})

    def subspace(self, s: Iterable[Point]) -> "FinSpace":
        s = self.check_subset(s)
        return FinSpace(s, frozenset(u & s for u in self.opens))

    def closure_operator(self) -> "ClosureOperator":
        return ClosureOperator(self.points, self.closure)

    def specialization_graph(self) -> nx.DiGraph:
        """x -> y whenever x <= y, reflexive and transitive."""
        graph = nx.DiGraph()
        graph.add_nodes_from(sorted_points(self.points))
        for x in sorted_points(self.points):
            graph.add_edges_from((x, y) for y in sorted_points(self.neighbourhood(x)))
        return graph

    def preorder(self) -> List[Tuple[Point, Point]]:
        return sorted(self.specialization_graph().edges(), key=lambda e: (point_key(e[0]), point_key(e[1])))

    def sorted_opens(self) -> List[List[Point]]:
        return sorted((sorted_points(u) for u in self.opens), key=lambda u: (len(u), [point_key(p) for p in u]))


# Constructors


def from_neighbourhoods(points: Iterable[Point], neighbourhoods: Mapping[Point, Iterable[Point]]) -> FinSpace:
    """The topology whose opens are the unions of the given sets, each U_x containing x."""
    points = frozenset(points)
    opens = {frozenset()}
    for x in sorted_points(points):
        u = frozenset(neighbourhoods[x])
        if x not in u:
            raise PreconditionError(f"the neighbourhood of {x!r} should contain it")
        opens |= {o | u for o in opens}
    opens.add(points)
    return FinSpace(points, frozenset(opens))


def generate_topology(points: Iterable[Point], subbasis: Iterable[Iterable[Point]]) -> FinSpace:
    """The coarsest topology on ``points`` in which every member of ``subbasis`` is open."""
    points = frozenset(points)
    subbasis = [frozenset(s) for s in subbasis]
    for s in subbasis:
        if not s <= points:
            raise PreconditionError(f"a generating set has points outside the space: {sorted_points(s - points)}")
    neighbourhoods = {x: frozenset.intersection(points, *(s for s in subbasis if x in s)) for x in points}
    return from_neighbourhoods(points, neighbourhoods)


def close_under_operations(points: Iterable[Point], subbasis: Iterable[Iterable[Point]]) -> FrozenSet[PointSet]:
    """Pairwise unions and intersections until nothing changes; the slow oracle for ``generate_topology``."""
    opens = {frozenset(), frozenset(points)} | {frozenset(s) for s in subbasis}
    while True:
        new = {u | v for u in opens for v in opens} | {u & v for u in opens for v in opens}
        if new <= opens:
            return frozenset(opens)
        opens |= new


def from_preorder(points: Iterable[Point], pairs: Iterable[Tuple[Point, Point]]) -> FinSpace:
    """The Alexandrov topology of the reflexive transitive closure of ``pairs`` (x <= y means y ∈ U_x)."""
    points = frozenset(points)
    graph = nx.DiGraph()
    graph.add_nodes_from(points)
    for x, y in pairs:
        if x not in points or y not in points:
            raise PreconditionError(f"preorder pair ({x!r}, {y!r}) leaves the points")
        graph.add_edge(x, y)
    closure = nx.transitive_closure(graph, reflexive=True)
    return from_neighbourhoods(points, {x: frozenset(closure.successors(x)) for x in points})


def discrete(points: Iterable[Point]) -> FinSpace:
    points = frozenset(points)
    return from_neighbourhoods(points, {x: {x} for x in points})


def indiscrete(points: Iterable[Point]) -> FinSpace:
    points = frozenset(points)
    return FinSpace(points, frozenset({frozenset(), points}))


# Closure operators


@dataclass(frozen=True)
class ClosureOperator:
    """A Kuratowski closure operator on a finite set, checked on construction."""

    points: PointSet
    op: Callable[[PointSet], PointSet] = field(compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "points", frozenset(self.points))
        failure = kuratowski_failure(self.points, self.op)
        if failure is not None:
            raise PreconditionError(f"not a closure operator: {failure}")

    def __call__(self, s: Iterable[Point]) -> PointSet:
        return frozenset(self.op(frozenset(s)))

    def closed_sets(self) -> List[PointSet]:
        return [s for s in all_subsets(self.points) if self(s) == s]

    def to_space(self) -> FinSpace:
        return FinSpace(self.points, frozenset(self.points - s for s in self.closed_sets()))


def kuratowski_failure(points: PointSet, op: Callable[[PointSet], PointSet]):
    """The first violated law as a message, or None.

    Every subset is tried on small sets; larger sets are checked on singletons and pairs only.
    """
    if len(points) <= KURATOWSKI_EXHAUSTIVE_POINTS:
        subsets = list(all_subsets(points))
    else:
        singles = [frozenset({x}) for x in sorted_points(points)]
        subsets = [frozenset()] + singles + [a | b for a, b in combinations(singles, 2)] + [points]
    if op(frozenset()):
        return "the closure of the empty set is not empty"
    for s in subsets:
        image = frozenset(op(s))
        if not s <= image <= points:
            return f"{sorted_points(s)} is not contained in its closure inside the space"
        if frozenset(op(image)) != image:
            return f"closure is not idempotent on {sorted_points(s)}"
    for s, t in combinations(subsets, 2):
        if frozenset(op(s | t)) != frozenset(op(s)) | frozenset(op(t)):
            return f"closure does not preserve the union of {sorted_points(s)} and {sorted_points(t)}"
    return None


# Maps


def image(f: Mapping[Point, Point], s: Iterable[Point]) -> PointSet:
    return frozenset(f[x] for x in s)


def preimage(f: Mapping[Point, Point], s: Iterable[Point]) -> PointSet:
    s = frozenset(s)
    return frozenset(x for x, y in f.items() if y in s)


def _check_map(f: Mapping[Point, Point], source: FinSpace, target: FinSpace):
    if frozenset(f) != source.points:
        raise PreconditionError("a map should be defined on exactly the points of its source")
    outside = [y for y in f.values() if y not in target.points]
    if outside:
        raise PreconditionError(f"the map leaves its target at {outside[0]!r}")


def is_continuous(f: Mapping[Point, Point], source: FinSpace, target: FinSpace) -> bool:
    _check_map(f, source, target)
    return all(source.is_open(preimage(f, v)) for v in target.opens)


def is_open_map(f: Mapping[Point, Point], source: FinSpace, target: FinSpace) -> bool:
    _check_map(f, source, target)
    return all(target.is_open(image(f, u)) for u in source.opens)


def is_surjective(f: Mapping[Point, Point], target: FinSpace) -> bool:
    return frozenset(f.values()) == target.points


def is_homeomorphism(f: Mapping[Point, Point], source: FinSpace, target: FinSpace) -> bool:
    injective = len(set(f.values())) == len(f)
    return (
        injective
        and is_surjective(f, target)
        and is_continuous(f, source, target)
        and is_open_map(f, source, target)
    )


def restrict_map(f: Mapping[Point, Point], s: Iterable[Point]) -> Dict[Point, Point]:
    return {x: f[x] for x in s}
