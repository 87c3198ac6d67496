"""Leaf-schemes and simple representations.

A leaf-scheme assigns a set to every leaf of a finite tree. It is evaluated bottom-up: an internal node t takes
the union of its children's values when r_l(T^t) is odd and their intersection when it is even.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Mapping

from borelkit import logging
from borelkit.config.utils_config import LimitEnumeration
from borelkit.derive.derivatives import subtree_heights
from borelkit.exceptions import ClassMismatchError, PreconditionError
from borelkit.ordinal import Ordinal, enumerate_limit, enumeration_index
from borelkit.schemes.setexpr import Base, Inter, SetExpr, Subset, Union, evaluate, set_class
from borelkit.trees.finite import FiniteTree
from borelkit.trees.seq import Seq

logger = logging.get_logger(__name__)


@dataclass(frozen=True)
class LeafScheme:
    tree: FiniteTree
    assign: Mapping[Seq, Subset] = field(hash=False)

    def __post_init__(self):
        assign = {tuple(s): frozenset(v) for s, v in dict(self.assign).items()}
        object.__setattr__(self, "assign", assign)
        if self.tree.is_empty:
            raise PreconditionError("a leaf-scheme needs a nonempty tree")
        leaves = set(self.tree.leaves())
        if set(assign) != leaves:
            extra = sorted(set(assign) - leaves)
            missing = sorted(leaves - set(assign))
            raise PreconditionError(
                f"assign should be defined exactly on the leaves (extra={extra}, missing={missing})"
            )

    def __hash__(self):
        return hash((self.tree, frozenset(self.assign.items())))

    def with_values(self, assign: Mapping[Seq, Subset]) -> "LeafScheme":
        return LeafScheme(self.tree, assign)


def extend_scheme(h: LeafScheme) -> Dict[Seq, Subset]:
    """The natural extension of H to every node of the tree."""
    heights = subtree_heights(h.tree)
    values: Dict[Seq, Subset] = {}
    for s in sorted(h.tree.nodes, key=len, reverse=True):
        if h.tree.is_leaf(s):
            values[s] = h.assign[s]
            continue
        children = [values[s + (n,)] for n in h.tree.children(s)]
        if heights[s] % 2 == 1:
            values[s] = frozenset().union(*children)
        else:
            values[s] = frozenset.intersection(*children)
    return values


def eval_scheme(h: LeafScheme) -> Subset:
    return extend_scheme(h)[()]


def shrink_scheme(h: LeafScheme, x: Subset, h2: LeafScheme) -> bool:
    """H(t) ∩ X ⊆ H2(t) ⊆ H(t) for every leaf t."""
    if h.tree != h2.tree:
        raise PreconditionError("shrink_scheme needs two schemes on the same tree")
    x = frozenset(x)
    return all(h.assign[t] & x <= h2.assign[t] <= h.assign[t] for t in h.tree.leaves())


def restrict_scheme(h: LeafScheme, x: Subset) -> LeafScheme:
    """H_X(t) := H(t) ∩ X."""
    x = frozenset(x)
    return h.with_values({t: v & x for t, v in h.assign.items()})


# Compilation of set expressions


def _items_for(e: SetExpr, union_level: bool) -> List[SetExpr]:
    if union_level and isinstance(e, Union):
        return list(e.items)
    if not union_level and isinstance(e, Inter):
        return list(e.items)
    return [e]


def _check_width(items: List[SetExpr], width: int):
    if len(items) > width:
        raise PreconditionError(f"an item list of length {len(items)} does not fit width {width}")


class _SimpleCompiler:
    def __init__(self, width: int, enumeration: LimitEnumeration):
        self.width = width
        self.enumeration = enumeration
        self.assign: Dict[Seq, Subset] = {}
        self.nodes: List[Seq] = []

    def compile(self, e: SetExpr, alpha: Ordinal, at: Seq, pad: Subset):
        """Place a scheme for e of leaf rank parity alpha's parity below ``at`` inside T_alpha."""
        self.nodes.append(at)
        if alpha.is_zero:
            self.assign[at] = evaluate(e)
            return
        if alpha.is_successor:
            items = _items_for(e, union_level=alpha.is_odd)
            _check_width(items, self.width)
            items = items + [Base(pad)] * (self.width - len(items))
            below = alpha.predecessor()
            for n, item in enumerate(items):
                self.compile(item, below, at + (n,), pad)
            return
        self._compile_limit(e, alpha, at, pad)

    def _compile_limit(self, e: SetExpr, lam: Ordinal, at: Seq, pad: Subset):
        items = _items_for(e, union_level=False)
        _check_width(items, self.width)
        top = max(max(set_class(item).to_int() for item in items), 1)
        k = top if top % 2 == 1 else top + 1
        used = {}
        for j, item in enumerate(items):
            beta = Ordinal.of(k + 2 * j)
            used[enumeration_index(lam, beta, self.enumeration)] = (item, beta)
        highest = Ordinal.of(k + 2 * (len(items) - 1))
        for n in range(self.width):
            beta = enumerate_limit(lam, n, self.enumeration)
            if n not in used and beta.is_finite and beta < highest:
                used[n] = (Base(pad), beta)
        for n in sorted(used):
            item, beta = used[n]
            self.compile(item, beta, at + (n,), pad)


def compile_simple(
    e: SetExpr, alpha: Ordinal, width: int, enumeration: LimitEnumeration = LimitEnumeration.INTERLEAVED
) -> LeafScheme:
    """A leaf-scheme on a finite subtree of T_alpha evaluating to eval(e).

    Omega-indexed lists are cut to ``width`` entries; the spare entries are padded with Base(eval(e)), which
    leaves both unions and intersections unchanged.
    """
    alpha = Ordinal.of(alpha)
    if width < 1:
        raise PreconditionError(f"width should be positive and not {width}")
    if not set_class(e) <= alpha:
        raise ClassMismatchError(f"expression of class {set_class(e)} cannot be compiled at {alpha}")
    compiler = _SimpleCompiler(width, enumeration)
    compiler.compile(e, alpha, (), evaluate(e))
    scheme = LeafScheme(FiniteTree(frozenset(compiler.nodes)), compiler.assign)
    logger.debug(f"compiled a simple representation with {len(compiler.nodes)} nodes at {alpha}")
    return scheme
