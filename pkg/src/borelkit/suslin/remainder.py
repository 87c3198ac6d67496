"""The trees S_C(y) and what their D_iie derivatives say about R_alpha(C) outside A(C).

For a scheme C with A(cl C) = X and y outside X:

* for even alpha, y ∈ R_alpha(cl C) iff D_iie^{alpha'}(S_C(y)) is nonempty;
* for odd alpha and T^c_{alpha,n}, y ∈ R iff D_iie^{alpha'}(S_C(y)) has a node of length n.

The converse direction gives a sufficient condition for X being F_alpha, checked by ``fa_sufficiency_check``.
"""
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional

from borelkit import logging
from borelkit.config.utils_config import DerivativeKind
from borelkit.derive.derivatives import iterate
from borelkit.exceptions import PreconditionError
from borelkit.ordinal import Ordinal
from borelkit.schemes.setexpr import Subset
from borelkit.suslin.engine import r_alpha
from borelkit.suslin.scheme import SuslinScheme, closed_scheme, suslin_operation
from borelkit.trees.expr import Empty, Full, Point, TreeExpr, height, is_empty, join_finite
from borelkit.trees.seq import Seq

logger = logging.get_logger(__name__)

Closure = Optional[Callable[[Subset], Subset]]


def s_tree(c: SuslinScheme, closure: Closure, y) -> TreeExpr:
    """S_C(y) = { s : y ∈ cl(C(s)) }: a finite tree with full cones above the domain leaves containing y."""
    if y not in c.universe:
        raise PreconditionError(f"{y!r} is not an element of the universe")
    closed = closed_scheme(c, closure)

    def node(s: Seq) -> TreeExpr:
        if closed.domain.is_leaf(s):
            return Full()
        branches = [((n,), node(s + (n,))) for n in closed.domain.children(s) if y in closed.values[s + (n,)]]
        return join_finite(branches) if branches else Point()

    if y not in closed.values[()]:
        return Empty()
    return node(())


def remainder_member(tree: TreeExpr, alpha: Ordinal, n: Optional[int] = None) -> bool:
    """Whether a point with S_C(y) = tree lies in R_alpha (or R over T^c_{alpha,n}) when it is outside A(cl C)."""
    alpha = Ordinal.of(alpha)
    derived = iterate(DerivativeKind.IIE, tree, alpha.alpha_prime())
    if alpha.is_even:
        if n is not None:
            raise PreconditionError(f"n is only allowed for odd ordinals, got n={n} with {alpha}")
        return not is_empty(derived)
    length = 1 if n is None else n
    bound = height(derived)
    return bound is None or bound >= length


def remainder_check(c: SuslinScheme, closure: Closure, alpha: Ordinal, n: Optional[int] = None) -> Subset:
    """The points of R_alpha(cl C) outside A(cl C), predicted from the D_iie derivatives of S_C(y)."""
    closed = closed_scheme(c, closure)
    outside = [y for y in c.universe if y not in suslin_operation(closed)]
    return frozenset(y for y in outside if remainder_member(s_tree(c, closure, y), alpha, n))


def remainder_agrees(c: SuslinScheme, closure: Closure, alpha: Ordinal, n: Optional[int] = None) -> bool:
    """The predicted remainder equals R_alpha(cl C) minus A(cl C) as computed by the R_T engine."""
    closed = closed_scheme(c, closure)
    computed = r_alpha(closed, alpha, n) - suslin_operation(closed)
    predicted = remainder_check(c, closure, alpha, n)
    if computed != predicted:
        logger.warning(
            f"remainder mismatch at {alpha}: engine {sorted(computed, key=repr)} vs {sorted(predicted, key=repr)}"
        )
    return computed == predicted


@dataclass(frozen=True)
class PointVerdict:
    point: object
    derivative: TreeExpr
    passed: bool

    @property
    def height(self) -> Optional[int]:
        """Height of the derived tree, None when it is unbounded."""
        return height(self.derivative)


@dataclass(frozen=True)
class SufficiencyReport:
    alpha: Ordinal
    verdicts: List[PointVerdict] = field(default_factory=list)
    passed: bool = True
    case: str = ""
    # n with X = R over T^c_{alpha,n}, set when odd alpha passes through a height bound
    witness: Optional[int] = None

    @property
    def failures(self) -> List[PointVerdict]:
        return [v for v in self.verdicts if not v.passed]


def sufficiency_verdict(tree: TreeExpr, alpha: Ordinal) -> PointVerdict:
    """Verdict for one point with S_C(y) = tree: empty derivative for even alpha, at most {∅} for odd alpha."""
    alpha = Ordinal.of(alpha)
    derived = iterate(DerivativeKind.IIE, tree, alpha.alpha_prime())
    if alpha.is_even:
        passed = is_empty(derived)
    else:
        bound = height(derived)
        passed = bound is not None and bound <= 0
    return PointVerdict(point=None, derivative=derived, passed=passed)


def fa_sufficiency_check(c: SuslinScheme, closure: Closure, x: Subset, alpha: Ordinal) -> SufficiencyReport:
    """Check whether C witnesses X ∈ F_alpha through the D_iie derivatives of S_C(y), y ∉ X.

    Even alpha needs every derivative empty. Odd alpha passes when every derivative is contained in {∅}, or when a
    single bound i has every derivative inside omega^{<=i}; then n = i + 1 must give R over T^c_{alpha,n} equal to X,
    which is checked against the R_T engine point by point.
    """
    alpha = Ordinal.of(alpha)
    x = c.universe.check_subset(x, "x")
    closed = closed_scheme(c, closure)
    a_of_c = suslin_operation(closed)
    if a_of_c != x:
        raise PreconditionError(f"A(cl C) should equal x, got {sorted(a_of_c, key=repr)}")
    verdicts = []
    for y in c.universe:
        if y in x:
            continue
        verdict = sufficiency_verdict(s_tree(c, closure, y), alpha)
        verdicts.append(PointVerdict(point=y, derivative=verdict.derivative, passed=verdict.passed))
    if alpha.is_even:
        return SufficiencyReport(alpha, verdicts, all(v.passed for v in verdicts), "empty derivatives")
    if all(v.passed for v in verdicts):
        return SufficiencyReport(alpha, verdicts, True, "derivatives within {∅}")
    heights = [v.height for v in verdicts]
    if all(h is not None for h in heights):
        n = max(heights, default=0) + 1
        leftover = r_alpha(closed, alpha, n) - x
        logger.debug(f"derivatives at {alpha} fit in omega^<={n - 1}; R over T^c_({alpha}, {n}) adds {len(leftover)}")
        verdicts = [replace(v, passed=v.height < n and v.point not in leftover) for v in verdicts]
        passed = all(v.passed for v in verdicts)
        return SufficiencyReport(alpha, verdicts, passed, f"derivatives within omega^<={n - 1}", witness=n)
    return SufficiencyReport(alpha, verdicts, False, "unbounded derivative")
