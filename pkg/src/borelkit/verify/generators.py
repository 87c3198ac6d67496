"""Random and exhaustive instances for the verify suites and the tests.

Every random generator takes a ``numpy.random.Generator`` and is deterministic given its state.
"""
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from borelkit.broom.expr import BroomExpr, FiniteList, Fork, RankLadder, Trivial, UniformTail, denotation, handle
from borelkit.broom.extension import ConeStrategy, ExtensionStrategy, InfBroomExpr, ListedStrategy
from borelkit.config.utils_config import LimitEnumeration
from borelkit.fintop.space import FinSpace, Point, PointSet, all_subsets, from_preorder, sorted_points
from borelkit.ordinal import Ordinal
from borelkit.schemes.setexpr import Base, Inter, SetExpr, Subset, Union, Universe
from borelkit.suslin.coding import SeqOfSeqs
from borelkit.suslin.scheme import SuslinScheme
from borelkit.trees.expr import (
    Constant,
    Point as PointTree,
    PrefixThenConstant,
    Ray,
    TreeExpr,
    explicit,
    graft,
    join_finite,
    join_omega,
)
from borelkit.trees.finite import FiniteTree
from borelkit.trees.seq import Seq

# Sequences, trees and ordinals


def random_seq(rng: np.random.Generator, length: int, bound: int) -> Seq:
    return tuple(int(e) for e in rng.integers(0, bound, size=length))


def random_finite_tree(rng: np.random.Generator, max_nodes: int, width: int, depth: int) -> FiniteTree:
    """A nonempty tree grown one child at a time from {∅}."""
    nodes = {()}
    for _ in range(int(rng.integers(0, max_nodes))):
        growable = sorted(s for s in nodes if len(s) < depth)
        if not growable:
            break
        parent = growable[int(rng.integers(0, len(growable)))]
        nodes.add(parent + (int(rng.integers(0, width)),))
    return FiniteTree(frozenset(nodes))


def random_ordinal(rng: np.random.Generator, max_exponent: int = 2, max_coefficient: int = 3) -> Ordinal:
    terms = []
    for e in range(max_exponent, -1, -1):
        if rng.random() < 0.5:
            terms.append((e, int(rng.integers(1, max_coefficient + 1))))
    return Ordinal(tuple(terms))


def random_limit(rng: np.random.Generator, max_exponent: int = 2, max_coefficient: int = 2) -> Ordinal:
    while True:
        lam = random_ordinal(rng, max_exponent, max_coefficient).limit_part
        if not lam.is_zero:
            return lam


def random_below(rng: np.random.Generator, alpha: Ordinal) -> Ordinal:
    """A random ordinal <= alpha with the same limit part or a finite one."""
    alpha = Ordinal.of(alpha)
    if alpha.is_finite:
        return Ordinal.of(int(rng.integers(0, alpha.to_int() + 1)))
    if rng.random() < 0.3:
        return Ordinal.of(int(rng.integers(0, 4)))
    return alpha.limit_part + int(rng.integers(0, alpha.finite_part + 1))


def random_tree_expr(rng: np.random.Generator, depth: int, width: int) -> TreeExpr:
    """A finitely described tree, possibly infinite and ill-founded."""
    roll = rng.random()
    if depth == 0 or roll < 0.15:
        return PointTree() if rng.random() < 0.7 else Ray(int(rng.integers(0, width)))
    if roll < 0.3:
        return explicit(random_finite_tree(rng, 2 * width, width, 2))
    if roll < 0.5:
        return graft(random_seq(rng, int(rng.integers(1, 3)), width), random_tree_expr(rng, depth - 1, width))
    if roll < 0.7:
        firsts = rng.choice(width + 1, size=int(rng.integers(1, width + 1)), replace=False)
        return join_finite([((int(f),), random_tree_expr(rng, depth - 1, width)) for f in firsts])
    if roll < 0.85:
        return join_omega(Constant(random_tree_expr(rng, depth - 1, width)))
    prefix = tuple(random_tree_expr(rng, depth - 1, width) for _ in range(int(rng.integers(1, 3))))
    return join_omega(PrefixThenConstant(prefix, random_tree_expr(rng, depth - 1, width)))


# Sets and schemes


def random_subset(rng: np.random.Generator, universe: Universe, density: float = 0.5) -> Subset:
    return frozenset(x for x in universe if rng.random() < density)


def random_set_expr(rng: np.random.Generator, universe: Universe, alpha: int, width: int) -> SetExpr:
    """An expression of class at most alpha: unions at odd levels, intersections at even ones."""
    if alpha == 0 or rng.random() < 0.15:
        return Base(random_subset(rng, universe))
    items = tuple(random_set_expr(rng, universe, alpha - 1, width) for _ in range(int(rng.integers(1, width + 1))))
    return Union(items) if alpha % 2 == 1 else Inter(items)


def random_scheme(
    rng: np.random.Generator, universe: Universe, depth: int, width: int, max_nodes: int = 8, keep: float = 0.7
) -> SuslinScheme:
    """A monotone scheme: every value is a random part of its parent's value."""
    domain = random_finite_tree(rng, max_nodes, width, depth)
    values: Dict[Seq, Subset] = {}
    for s in sorted(domain.nodes, key=len):
        parent = values[s[:-1]] if s else universe.elements
        values[s] = frozenset(x for x in parent if rng.random() < keep)
    return SuslinScheme(universe, domain, values)


def random_svec(rng: np.random.Generator, m: int, bound: int) -> SeqOfSeqs:
    """(s_1, ..., s_m) with |s_k| = k + 1."""
    return tuple(random_seq(rng, k + 1, bound) for k in range(1, m + 1))


# Brooms


def _random_heads(rng: np.random.Generator, count: int, width: int) -> List[Seq]:
    firsts = sorted(int(f) for f in rng.choice(width + 1, size=count, replace=False))
    return [(f,) + random_seq(rng, int(rng.integers(0, 2)), width) for f in firsts]


def random_broom(
    rng: np.random.Generator,
    alpha: Ordinal,
    width: int = 3,
    enumeration: LimitEnumeration = LimitEnumeration.INTERLEAVED,
) -> BroomExpr:
    """A broom of class exactly alpha."""
    alpha = Ordinal.of(alpha)
    if alpha.is_zero:
        return Trivial()
    if alpha.is_odd:
        head = random_seq(rng, int(rng.integers(1, 3)), width)
        return handle(head, random_broom(rng, alpha.predecessor(), width, enumeration))
    if alpha.is_limit:
        cap = random_broom(rng, Ordinal.of(int(rng.integers(0, 3))), width, enumeration)
        word = random_seq(rng, int(rng.integers(0, 2)), width)
        return Fork(RankLadder(alpha, int(rng.integers(0, 2)), word, enumeration, cap))
    # a fork of class alpha needs a member of class alpha - 1 or alpha - 2 and nothing higher
    top = alpha.predecessor()
    if rng.random() < 0.5:
        top = top.predecessor()
    if rng.random() < 0.5:
        count = int(rng.integers(1, width + 1))
        subs = [random_broom(rng, top, width, enumeration)]
        subs += [random_broom(rng, random_below(rng, top), width, enumeration) for _ in range(count - 1)]
        order = rng.permutation(count)
        heads = _random_heads(rng, count, width)
        return Fork(FiniteList(tuple((heads[i], subs[int(order[i])]) for i in range(count))))
    count = int(rng.integers(0, 3))
    prefix = tuple(
        (
            (f,) + random_seq(rng, int(rng.integers(0, 2)), width),
            random_broom(rng, random_below(rng, top), width, enumeration),
        )
        for f in range(count)
    )
    word = random_seq(rng, int(rng.integers(0, 2)), width)
    return Fork(UniformTail(prefix, count + int(rng.integers(0, 2)), word, random_broom(rng, top, width, enumeration)))


def random_strategy(rng: np.random.Generator, width: int = 3) -> ExtensionStrategy:
    tail_prefix = random_seq(rng, int(rng.integers(0, 2)), width)
    tail_entry = int(rng.integers(0, width))
    if rng.random() < 0.5:
        word = random_seq(rng, int(rng.integers(0, 2)), width)
        return ConeStrategy(int(rng.integers(0, width)), word, tail_prefix, tail_entry)
    heads = tuple(_random_heads(rng, int(rng.integers(1, width + 1)), width))
    return ListedStrategy(heads, None, tail_prefix, tail_entry)


def random_inf_broom(rng: np.random.Generator, base: BroomExpr, width: int = 3) -> InfBroomExpr:
    """An extension of base with a random strategy and up to two leaves of its own."""
    leaves = sorted(denotation(base, width))
    picked = rng.choice(len(leaves), size=min(len(leaves), int(rng.integers(0, 3))), replace=False)
    per_leaf = tuple((leaves[int(i)], random_strategy(rng, width)) for i in picked)
    return InfBroomExpr(base, random_strategy(rng, width), per_leaf)


# Finite spaces


def random_space(rng: np.random.Generator, size: int, density: float = 0.25) -> FinSpace:
    """The Alexandrov space of a random preorder on range(size)."""
    points = range(size)
    pairs = [(x, y) for x in points for y in points if x != y and rng.random() < density]
    return from_preorder(points, pairs)


def _up_sets(order: frozenset, points: Sequence[Point]) -> Iterator[PointSet]:
    for u in all_subsets(points):
        if all(y in u for x, y in order if x in u):
            yield u


def _down_sets(order: frozenset, points: Sequence[Point]) -> Iterator[PointSet]:
    for d in all_subsets(points):
        if all(x in d for x, y in order if y in d):
            yield d


def enumerate_preorders(size: int) -> Iterator[frozenset]:
    """Every preorder on range(size), as its set of pairs x <= y with x != y.

    A preorder on n + 1 points is a preorder on n points plus the up-set U above and the down-set D below the new
    point, with every d ∈ D below every u ∈ U.
    """
    if size == 0:
        yield frozenset()
        return
    new = size - 1
    old_points = list(range(new))
    for order in enumerate_preorders(new):
        for u, d in product(list(_up_sets(order, old_points)), list(_down_sets(order, old_points))):
            if all(a == b or (a, b) in order for a in d for b in u):
                yield order | {(new, b) for b in u} | {(a, new) for a in d}


def enumerate_spaces(size: int) -> Iterator[FinSpace]:
    """Every topology on range(size)."""
    for order in enumerate_preorders(size):
        yield from_preorder(range(size), order)


def clopen_sets(x: FinSpace) -> List[PointSet]:
    """Unions of connected components; exactly the clopen sets of a finite space."""
    components = [frozenset(c) for c in nx.weakly_connected_components(x.specialization_graph())]
    return [frozenset().union(*choice) for choice in _subfamilies(components)]


def _subfamilies(items: List[PointSet]) -> Iterator[Tuple[PointSet, ...]]:
    for mask in range(2 ** len(items)):
        yield tuple(c for i, c in enumerate(items) if mask >> i & 1)


def random_zoom_parts(rng: np.random.Generator, y: FinSpace, max_part: int = 3) -> Dict[Point, FinSpace]:
    isolated = sorted_points(y.isolated_points())
    chosen = [p for p in isolated if rng.random() < 0.6]
    return {p: random_space(rng, int(rng.integers(1, max_part + 1)), density=0.4) for p in chosen}


def random_extensions(
    rng: np.random.Generator, x: FinSpace, family: Sequence[PointSet]
) -> Dict[int, FinSpace]:
    """One extension per member: A plus at most one new point whose neighbourhood is an up-set of A away from the
    overlaps. A stays dense and keeps its topology, and the overlaps stay clopen."""
    extensions = {}
    for n, a in enumerate(family):
        sub = x.subspace(a)
        overlaps = frozenset().union(*(a & b for m, b in enumerate(family) if m != n))
        options = [u for u in sub.opens if u and not u & overlaps]
        if not options or rng.random() < 0.3:
            extensions[n] = sub
            continue
        u = options[int(rng.integers(0, len(options)))]
        extra = ("e", n)
        order = [(p, q) for p in a for q in sub.neighbourhood(p)] + [(extra, q) for q in u]
        extensions[n] = from_preorder(a | {extra}, order)
    return extensions


def random_amalgamation_inputs(
    rng: np.random.Generator, size: int
) -> Tuple[FinSpace, Tuple[PointSet, ...], Dict[int, FinSpace]]:
    x = random_space(rng, size, density=0.15)
    clopens = [c for c in clopen_sets(x) if c]
    count = int(rng.integers(1, min(3, len(clopens)) + 1))
    family = tuple(clopens[int(i)] for i in rng.choice(len(clopens), size=count, replace=False))
    return x, family, random_extensions(rng, x, family)

