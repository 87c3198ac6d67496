"""H_{<gamma}(A): the minimal h ∈ cl_Tr(B) whose cone A(h) = { sigma ∈ A : h ⊑ sigma } lies below class gamma.

A(h) is a broom extension of B(h) = { s ∈ B : h ⊑ s }, so its class is the class of B(h).
"""
from dataclasses import dataclass, field
from itertools import combinations
from typing import FrozenSet, List

from borelkit import logging
from borelkit.broom.expr import broom_closure_tree, classify_broom, denotation, restrict
from borelkit.broom.extension import InfBroomExpr
from borelkit.constants import DEFAULT_WIDTH
from borelkit.exceptions import PreconditionError
from borelkit.ordinal import Ordinal
from borelkit.trees.expr import children_profile, truncate
from borelkit.trees.seq import Seq, incomparable, is_prefix

logger = logging.get_logger(__name__)


def _below(a: InfBroomExpr, h: Seq, gamma: Ordinal) -> bool:
    cone = restrict(a.base, h)
    return cone is not None and classify_broom(cone) < gamma


def gamma_handles(a: InfBroomExpr, gamma: Ordinal, width: int = DEFAULT_WIDTH) -> FrozenSet[Seq]:
    """The <gamma-handles met while walking cl_Tr(B) on entries below ``width``."""
    gamma = Ordinal.of(gamma)
    if gamma < 2:
        raise PreconditionError(f"gamma should be at least 2 and not {gamma}")
    closure = broom_closure_tree(a.base)
    handles = set()
    stack: List[Seq] = [()]
    while stack:
        h = stack.pop()
        if _below(a, h, gamma):
            handles.add(h)
            continue
        stack.extend(h + (n,) for n in children_profile(closure, h).entries_below(width))
    return frozenset(handles)


@dataclass
class HandleReport:
    handles: FrozenSet[Seq]
    covered: bool
    incomparable: bool
    prefix_property: bool
    uncovered: List[Seq] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.covered and self.incomparable and self.prefix_property


def handle_partition_check(
    a: InfBroomExpr, gamma: Ordinal, width: int = DEFAULT_WIDTH, depth: int = 6
) -> HandleReport:
    """The cones A(h), h ∈ H, partition A, and every h0 with A(h0) below gamma extends some h ∈ H.

    Checked on the elements of B and the nodes of cl_Tr(B) with entries below ``width``.
    """
    gamma = Ordinal.of(gamma)
    handles = gamma_handles(a, gamma, width)
    uncovered = [s for s in sorted(denotation(a.base, width)) if sum(is_prefix(h, s) for h in handles) != 1]
    pairwise = all(incomparable(g, h) for g, h in combinations(handles, 2))
    nodes = truncate(broom_closure_tree(a.base), depth, width).sorted_nodes()
    prefix_property = all(any(is_prefix(h, h0) for h in handles) for h0 in nodes if _below(a, h0, gamma))
    report = HandleReport(handles, not uncovered, pairwise, prefix_property, uncovered)
    logger.debug(f"{len(handles)} handles below {gamma}, passed={report.passed}")
    return report
