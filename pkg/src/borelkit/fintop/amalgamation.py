"""Amalgamation spaces Amg(X, E) and the axioms (A1)-(A4) at finite scale.

Every subset of a finite space is compact, so (A2) and (A3) hold trivially. (A4) holds trivially as well once
any finite subfamily A' may be excluded (take A' = the whole family); ``check_axioms_a`` can bound |A'| to give
the axiom some content. In the Hausdorff setting compact overlaps A ∩ A' are closed in E(A); here that
consequence is required explicitly.
"""
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from borelkit import logging
from borelkit.exceptions import PreconditionError
from borelkit.fintop.space import (
    FinSpace,
    Point,
    PointSet,
    generate_topology,
    is_continuous,
    restrict_map,
    sorted_points,
)
from borelkit.fintop.wop import w_operator

logger = logging.get_logger(__name__)

VACUOUS = "vacuous: every subset of a finite space is compact"


@dataclass
class AxiomReport:
    a1: bool
    a2: bool
    a3: bool
    a4: bool
    notes: Dict[str, str] = field(default_factory=dict)
    not_clopen: List[PointSet] = field(default_factory=list)
    witness_cover: List[PointSet] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.a1 and self.a2 and self.a3 and self.a4


def _check_family(x: FinSpace, family: Sequence) -> List[PointSet]:
    return [x.check_subset(a, f"family member {n}") for n, a in enumerate(family)]


def check_axioms_a(x: FinSpace, family: Sequence, max_exceptions: Optional[int] = None) -> AxiomReport:
    family = _check_family(x, family)
    not_clopen = [a for a in family if not x.is_clopen(a)]
    report = AxiomReport(a1=not not_clopen, a2=True, a3=True, a4=True, not_clopen=not_clopen)
    report.notes["A2"] = VACUOUS
    report.notes["A3"] = VACUOUS
    if max_exceptions is None:
        report.notes["A4"] = "vacuous: the whole family is a finite exception set"
        return report
    k = x.points.difference(*family)
    # the neighbourhoods of the points of K refine every open cover of K, so they are the hardest cover
    cover = [x.neighbourhood(p) for p in sorted_points(k)]
    report.a4 = any(
        all(any(a <= u.union(*excluded) for u in cover) for a in family if a not in excluded)
        for size in range(min(max_exceptions, len(family)) + 1)
        for excluded in combinations(family, size)
    )
    report.notes["A4"] = f"checked against the minimal neighbourhoods of K with at most {max_exceptions} exceptions"
    if not report.a4:
        report.witness_cover = cover
    return report


@dataclass(frozen=True)
class Amalgamation:
    space: FinSpace
    x: FinSpace
    family: Tuple[PointSet, ...]
    extensions: Mapping[int, FinSpace] = field(hash=False)

    def basic_set(self, u) -> PointSet:
        """V_U = U ∪ ⋃_A W^{E(A)}_A(U ∩ A) for U open in X."""
        u = frozenset(u)
        if not self.x.is_open(u):
            raise PreconditionError(f"{sorted_points(u)} is not open in X")
        return u.union(*(w_operator(self.extensions[n], a, u & a) for n, a in enumerate(self.family)))

    def basis(self) -> List[PointSet]:
        basis = {w for e in self.extensions.values() for w in e.opens}
        basis |= {self.basic_set(u) for u in self.x.opens}
        return sorted(basis, key=lambda b: (len(b), repr(sorted_points(b))))

    def postconditions(self) -> Dict[str, bool]:
        basis = set(self.basis())
        extensions = [self.extensions[n] for n in range(len(self.family))]
        return {
            "basis closed under intersections": all(b & c in basis for b, c in combinations(basis, 2)),
            "extensions clopen": all(self.space.is_clopen(e.points) for e in extensions),
            "X embedded": self.space.subspace(self.x.points) == self.x,
            "extensions embedded": all(self.space.subspace(e.points) == e for e in extensions),
            "A1 for the extensions": check_axioms_a(self.space, [e.points for e in extensions]).a1,
        }


def check_amalgamation_set(x: FinSpace, family: Sequence, extensions: Mapping[int, FinSpace]):
    """X ∩ E(A) = A, E(A) ∩ E(A') = A ∩ A', A dense in E(A) with its topology from X, overlaps clopen in E(A)."""
    family = _check_family(x, family)
    if set(extensions) != set(range(len(family))):
        raise PreconditionError("there should be exactly one extension per family member")
    for n, a in enumerate(family):
        e = extensions[n]
        if e.points & x.points != a:
            raise PreconditionError(f"extension {n} meets X in {sorted_points(e.points & x.points)} instead of A")
        if not e.is_dense(a):
            raise PreconditionError(f"family member {n} is not dense in its extension")
        if e.subspace(a) != x.subspace(a):
            raise PreconditionError(f"extension {n} induces another topology on its family member")
    for (n, a), (m, b) in combinations(enumerate(family), 2):
        if extensions[n].points & extensions[m].points != a & b:
            raise PreconditionError(f"extensions {n} and {m} overlap outside of A ∩ A'")
        if not extensions[n].is_clopen(a & b) or not extensions[m].is_clopen(a & b):
            raise PreconditionError(f"the overlap of members {n} and {m} is not clopen in their extensions")


def amalgamate(x: FinSpace, family: Sequence, extensions: Mapping[int, FinSpace]) -> Amalgamation:
    report = check_axioms_a(x, family)
    if not report.a1:
        raise PreconditionError(f"(A1) fails: {sorted_points(report.not_clopen[0])} is not clopen")
    check_amalgamation_set(x, family, extensions)
    family = tuple(frozenset(a) for a in family)
    points = x.points.union(*(e.points for e in extensions.values()))
    partial = Amalgamation(FinSpace(points, frozenset({frozenset(), points})), x, family, dict(extensions))
    amalgamation = Amalgamation(generate_topology(points, partial.basis()), x, family, dict(extensions))
    failed = [name for name, ok in amalgamation.postconditions().items() if not ok]
    assert not failed, f"amalgamation postconditions failed: {failed}"
    logger.debug(f"amalgamated {len(family)} extensions into {len(points)} points")
    return amalgamation


def trivial_extensions(x: FinSpace, family: Sequence) -> Dict[int, FinSpace]:
    """E(A) = A with the subspace topology."""
    return {n: x.subspace(a) for n, a in enumerate(family)}


def idempotence_holds(x: FinSpace, family: Sequence) -> bool:
    """Amg(X, A) = X."""
    return amalgamate(x, family, trivial_extensions(x, family)).space == x


@dataclass(frozen=True)
class StretchReport:
    continuous: bool
    restrictions_continuous: bool

    @property
    def agree(self) -> bool:
        return self.continuous == self.restrictions_continuous


def stretch_check(amalgamation: Amalgamation, f: Mapping[Point, Point], z: FinSpace) -> StretchReport:
    """Continuity of f on Amg(X, E) against continuity of its restrictions to X and to every E(A)."""
    space = amalgamation.space
    parts = [amalgamation.x] + [amalgamation.extensions[n] for n in range(len(amalgamation.family))]
    return StretchReport(
        continuous=is_continuous(f, space, z),
        restrictions_continuous=all(is_continuous(restrict_map(f, part.points), part, z) for part in parts),
    )
