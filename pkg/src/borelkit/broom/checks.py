"""Checks on broom sets: the D_iie rank lemma, almost-disjointness and the hierarchy against brute force."""
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Union

from borelkit import logging
from borelkit.broom.expr import BroomExpr, broom_closure_tree, classify_broom, denotation
from borelkit.broom.extension import InfBroomExpr, inf_closure_tree, inf_denotation
from borelkit.config.utils_config import DerivativeKind
from borelkit.derive.derivatives import derive_iie, iterate
from borelkit.exceptions import PreconditionError
from borelkit.ordinal import Ordinal
from borelkit.trees.expr import TreeExpr, height, is_empty, materialize
from borelkit.trees.seq import Seq, longest_common_prefix

logger = logging.get_logger(__name__)


@dataclass(frozen=True)
class RankLemmaReport:
    alpha: Ordinal
    alpha_prime: Ordinal
    extension: bool
    derivative: TreeExpr
    finite: bool
    within_point: Optional[bool]
    surviving: List[Seq] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """D^{alpha'} is finite, and at most {∅} when alpha is even."""
        return self.finite and self.within_point is not False

    @property
    def optimal(self) -> bool:
        """Observed only: the derivative is nonempty, so alpha' cannot be lowered."""
        return not is_empty(self.derivative)


def rank_lemma_check(x: Union[BroomExpr, InfBroomExpr]) -> RankLemmaReport:
    """D_iie^{alpha'} of cl_Tr(B), or of D_iie(cl_Tr(A)) for an extension, with alpha the class of B."""
    extension = isinstance(x, InfBroomExpr)
    base = x.base if extension else x
    alpha = classify_broom(base)
    tree = derive_iie(inf_closure_tree(x)) if extension else broom_closure_tree(base)
    derived = iterate(DerivativeKind.IIE, tree, alpha.alpha_prime())
    nodes = materialize(derived)
    within_point = None
    if alpha.is_even:
        bound = height(derived) if nodes is not None else None
        within_point = bound is not None and bound <= 0
    report = RankLemmaReport(
        alpha=alpha,
        alpha_prime=alpha.alpha_prime(),
        extension=extension,
        derivative=derived,
        finite=nodes is not None,
        within_point=within_point,
        surviving=nodes.sorted_nodes() if nodes is not None else [],
    )
    logger.debug(f"rank lemma at {alpha}: {len(report.surviving)} surviving nodes, passed={report.passed}")
    return report


def _shared(a: InfBroomExpr, b: InfBroomExpr, width: int) -> int:
    return len(inf_denotation(a, width) & inf_denotation(b, width))


def pair_intersection_grows(a: InfBroomExpr, b: InfBroomExpr, width: Optional[int] = None) -> bool:
    """Whether the common elements keep appearing as the width grows past every constant.

    Both sets are finite unions of patterns whose free parameters are fork indices, and every constant of the
    descriptions is below K. An infinite intersection has a free index that is unbounded on common elements, so
    widening from W to W + K adds a common element; a finite one is already complete at W.
    """
    k = max(a.max_constant(), b.max_constant()) + 2
    w0 = width if width is not None else 2 * k
    return _shared(a, b, w0 + k) > _shared(a, b, w0)


def almost_disjoint_check(family: Sequence[InfBroomExpr], width: Optional[int] = None) -> bool:
    """Distinct members of the family have finite intersections."""
    for a, b in combinations(family, 2):
        if a == b:
            continue
        if pair_intersection_grows(a, b, width):
            logger.info(f"infinite intersection between extensions of {a.base} and {b.base}")
            return False
    return True


# Brute force on denotations


def min_class(elements: FrozenSet[Seq]) -> int:
    """The least alpha with the finite antichain ``elements`` in B_alpha, reading every group of a common first
    entry as one branch of a fork."""
    if not elements:
        raise PreconditionError("a broom set is nonempty")
    if elements == frozenset({()}):
        return 0
    h = longest_common_prefix(elements)
    if h:
        return min_class(frozenset(s[len(h) :] for s in elements)) + 1
    if () in elements:
        raise PreconditionError("a broom set is an antichain")
    groups: Dict[int, List[Seq]] = {}
    for s in elements:
        groups.setdefault(s[0], []).append(s)
    top = 0
    for group in groups.values():
        f = longest_common_prefix(group)
        top = max(top, min_class(frozenset(s[len(f) :] for s in group)))
    return top + 2 if top % 2 == 0 else top + 1


def hierarchy_check(b: BroomExpr, width: int) -> bool:
    """classify_broom agrees with ``min_class`` on the elements below ``width``.

    Only meaningful for finite classes and a width past every constant of b plus two, so that every fork keeps
    at least two branches.
    """
    alpha = classify_broom(b)
    if not alpha.is_finite:
        raise PreconditionError(f"brute force needs a finite class and not {alpha}")
    brute = min_class(denotation(b, width))
    if brute != alpha.to_int():
        logger.warning(f"class {alpha} but brute force finds {brute} at width {width}")
    return brute == alpha.to_int()
