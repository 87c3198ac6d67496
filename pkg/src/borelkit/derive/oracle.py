"""Finite-evidence checks for the structural derivative rules.

"Infinitely many extensions" cannot be observed in a truncation, so these checks only try to falsify a claim:
a node claimed inside a derivative must show enough extensions in a wide truncation, and a node claimed outside
must not gain extensions when the truncation widens. Finite parts of the tree are assumed to use entries below
half the falsification width.
"""
from collections import deque
from dataclasses import dataclass
from typing import List, Optional

from borelkit.config.utils_config import DerivativeKind
from borelkit.derive.derivatives import iterate
from borelkit.ordinal import ONE, Ordinal, enumerate_limit
from borelkit.trees.expr import (
    FiniteChildren,
    TreeExpr,
    children_profile,
    member,
    root_children,
    subtree_at,
    truncate,
)
from borelkit.trees.finite import FiniteTree
from borelkit.trees.seq import Seq

FALSIFY_WIDTH = 12
FALSIFY_EXTRA_DEPTH = 3
FALSIFY_SEARCH_NODES = 256


@dataclass
class Falsification:
    node: Seq
    claimed: bool
    reason: str


def _extensions(above: FiniteTree) -> List[Seq]:
    return [s for s in above.sorted_nodes() if s]


def _wide_node_above(t: TreeExpr, width: int, budget: int = FALSIFY_SEARCH_NODES) -> Optional[Seq]:
    """First node of T, breadth first, with more than width // 2 children below width.

    Such a node has infinitely many children, so every node below it has infinitely many pairwise incomparable
    extensions. Without one, the part of T above the root is finitely branching: a finite tree plus finitely many
    rays, whose antichains are finite. The search gives up after ``budget`` nodes, which covers a ray.
    """
    frontier = deque([((), t)])
    visited = 0
    while frontier and visited < budget:
        s, sub = frontier.popleft()
        visited += 1
        entries = root_children(sub).entries_below(width)
        if len(entries) > width // 2:
            return s
        frontier.extend((s + (n,), subtree_at(sub, (n,))) for n in entries)
    return None


def falsify_derivative_claim(
    kind: DerivativeKind,
    t: TreeExpr,
    node: Seq,
    claimed: bool,
    width: int = FALSIFY_WIDTH,
    extra_depth: int = FALSIFY_EXTRA_DEPTH,
) -> List[Falsification]:
    """Evidence against the claim ``node ∈ D_kind(T) == claimed`` from a width x extra_depth truncation of T^node."""
    node = tuple(node)
    if not member(t, node):
        return [Falsification(node, claimed, "not a node")] if claimed else []
    above = truncate(subtree_at(t, node), extra_depth, width)
    extensions = _extensions(above)
    found = []
    if kind is DerivativeKind.L:
        if claimed and not extensions and children_profile(t, node) == FiniteChildren(()):
            found.append(Falsification(node, claimed, "is a leaf"))
        if not claimed and extensions:
            found.append(Falsification(node, claimed, f"has the extension {node + extensions[0]}"))
    elif kind is DerivativeKind.I:
        if claimed and len(extensions) < extra_depth:
            found.append(Falsification(node, claimed, f"only {len(extensions)} extensions in the truncation"))
        narrow = _extensions(truncate(subtree_at(t, node), extra_depth, max(1, width // 2)))
        if not claimed and len(extensions) > len(narrow):
            found.append(Falsification(node, claimed, f"extensions keep appearing up to width {width}"))
    else:
        wide = _wide_node_above(subtree_at(t, node), width)
        if claimed and wide is None:
            found.append(Falsification(node, claimed, f"no node above it branches past width {width // 2}"))
        if not claimed and wide is not None:
            found.append(Falsification(node, claimed, f"{node + wide} above it branches past width {width // 2}"))
    return found


def falsify_derivative(
    kind: DerivativeKind, t: TreeExpr, depth: int, width: int = FALSIFY_WIDTH, alpha: Ordinal = ONE
) -> List[Falsification]:
    """Check every node of a small truncation of T against the computed first derivative."""
    derived = iterate(kind, t, alpha)
    found = []
    for node in truncate(t, depth, min(width, 4)).sorted_nodes():
        found.extend(falsify_derivative_claim(kind, t, node, member(derived, node), width))
    return found


def limit_stage_check(kind: DerivativeKind, t: TreeExpr, lam: Ordinal, depth: int, width: int, samples: int = 16):
    """D^lambda agrees on a truncation with the intersection of D^{pi_lambda(n)} over the first ``samples`` n.

    Returns the index at which the intersection reached D^lambda, or None if it did not within ``samples``.
    """
    target = truncate(iterate(kind, t, lam), depth, width)
    running = truncate(t, depth, width).nodes
    for n in range(samples):
        stage = truncate(iterate(kind, t, enumerate_limit(lam, n)), depth, width).nodes
        if not target.nodes <= stage:
            raise AssertionError(f"D^{lam} is not contained in D^{enumerate_limit(lam, n)}")
        running = running & stage
        if running == target.nodes:
            return n
    return None
