"""Admissible mappings, the brute-force R_T oracle and tree embeddings.

A map phi: T -> omega^{<omega} is admissible when it preserves extension and |phi(t)| = t(0) + ... + t(|t|-1).
x lies in R^h_T(C) when some admissible phi has x ∈ C(h⌢phi(t)) for every t ∈ T.
"""
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple

from borelkit import logging
from borelkit.config.utils_config import LimitEnumeration
from borelkit.exceptions import PreconditionError
from borelkit.ordinal import Ordinal
from borelkit.suslin.engine import rt_set
from borelkit.suslin.scheme import SuslinScheme
from borelkit.trees.canonical import canonical_tree_c
from borelkit.trees.expr import TreeExpr, explicit, join_finite, root_children, subtree_at, truncate
from borelkit.trees.finite import FiniteTree
from borelkit.trees.seq import Seq, coordinate_sum, is_prefix, seq

logger = logging.get_logger(__name__)


@dataclass(frozen=True)
class AdmissibleMap:
    tree: FiniteTree
    mapping: Mapping[Seq, Seq] = field(hash=False)

    def __post_init__(self):
        mapping = {seq(t): seq(s) for t, s in dict(self.mapping).items()}
        object.__setattr__(self, "mapping", mapping)
        if set(mapping) != set(self.tree.nodes):
            raise PreconditionError("an admissible map should be defined exactly on the nodes of its tree")
        for t, image in mapping.items():
            if len(image) != coordinate_sum(t):
                raise PreconditionError(f"|phi({t})| should be {coordinate_sum(t)} and not {len(image)}")
            if t and not is_prefix(mapping[t[:-1]], image):
                raise PreconditionError(f"phi({t}) = {image} does not extend phi({t[:-1]}) = {mapping[t[:-1]]}")

    def __hash__(self):
        return hash((self.tree, frozenset(self.mapping.items())))

    def __call__(self, t: Seq) -> Seq:
        return self.mapping[seq(t)]

    def witnesses(self, c: SuslinScheme, x, h: Seq = ()) -> bool:
        """x ∈ C(h⌢phi(t)) for every t in the tree."""
        h = seq(h)
        return all(x in c.value(h + image) for image in self.mapping.values())


def _words(length: int, bound: int) -> Iterator[Seq]:
    return itertools.product(range(bound), repeat=length)


def _enumerate_maps(tree: FiniteTree, bound: int) -> Iterator[Dict[Seq, Seq]]:
    # choose a word s_m per child (m) of the root and recurse into T^(m)
    children = tree.children(())
    if not children:
        yield {(): ()}
        return
    per_child = []
    for m in children:
        sub = tree.subtree((m,))
        options = []
        for word in _words(m, bound):
            for inner in _enumerate_maps(sub, bound):
                options.append({(m,) + u: word + image for u, image in inner.items()})
        per_child.append(options)
    for choice in itertools.product(*per_child):
        mapping = {(): ()}
        for part in choice:
            mapping.update(part)
        yield mapping


def enumerate_admissible(tree: FiniteTree, alphabet_bound: int) -> Iterator[AdmissibleMap]:
    """Every admissible map of a finite tree whose images use entries below ``alphabet_bound``."""
    if tree.is_empty:
        return
    for mapping in _enumerate_maps(tree, alphabet_bound):
        yield AdmissibleMap(tree, mapping)


def oracle_alphabet(c: SuslinScheme) -> int:
    """Entries past max_entry + 1 behave exactly like max_entry + 1, so this alphabet is exhaustive."""
    return c.max_entry() + 2


def exhaustive_member(c: SuslinScheme, tree: FiniteTree, x, h: Seq = ()) -> bool:
    """x ∈ R^h_T(C) by trying every admissible map; only for tiny trees."""
    bound = oracle_alphabet(c)
    return any(phi.witnesses(c, x, h) for phi in enumerate_admissible(tree, bound))


def brute_force_member(c: SuslinScheme, tree: FiniteTree, x, h: Seq = ()) -> bool:
    """x ∈ R^h_T(C) by searching for a witnessing admissible map.

    The choices of words for different children are independent, so the search runs branch by branch instead of
    over whole maps; it still tries every word of the exhaustive alphabet and never uses the recursive formula.
    """
    if x not in c.universe:
        raise PreconditionError(f"{x!r} is not an element of the universe")
    if tree.is_empty:
        raise PreconditionError("R_T is only evaluated on nonempty trees")
    bound = oracle_alphabet(c)

    @lru_cache(maxsize=None)
    def witness(node: Seq, image: Seq) -> bool:
        if x not in c.value(image):
            return False
        for m in tree.children(node):
            if not any(witness(node + (m,), image + word) for word in _words(m, bound)):
                return False
        return True

    return witness((), seq(h))


def brute_force_r_set(c: SuslinScheme, tree: FiniteTree, h: Seq = ()):
    return frozenset(x for x in c.universe if brute_force_member(c, tree, x, h))


# Embeddings between trees


def embed_check(f: Mapping[Seq, Seq], t: FiniteTree, s: FiniteTree) -> bool:
    """f preserves extension and f(u)(0) + ... + f(u)(k) >= u(0) + ... + u(k) for every k < |u|.

    When this holds, R_s(C) ⊆ R_t(C) for every scheme C.
    """
    f = {seq(u): seq(v) for u, v in dict(f).items()}
    missing = [u for u in t.nodes if u not in f]
    if missing:
        raise PreconditionError(f"f should be defined on every node of t, missing {sorted(missing)[:5]}")
    outside = [u for u in t.nodes if f[u] not in s]
    if outside:
        raise PreconditionError(f"f maps {sorted(outside)[:5]} outside of s")
    for u in t.nodes:
        image = f[u]
        if u and not is_prefix(f[u[:-1]], image):
            return False
        if len(image) < len(u):
            return False
        if any(sum(image[: k + 1]) < sum(u[: k + 1]) for k in range(len(u))):
            return False
    return True


def find_embedding(t: FiniteTree, s: TreeExpr, width: int) -> Optional[Dict[Seq, Seq]]:
    """A length-preserving map t -> s passing ``embed_check``, searching children of s below ``width``."""
    if t.is_empty:
        return {}

    @lru_cache(maxsize=None)
    def feasible(source: FiniteTree, target: TreeExpr, slack: int) -> Optional[Tuple[Tuple[int, int], ...]]:
        # for each child m of the source root, a child n of the target root that works
        choice = []
        targets = root_children(target).entries_below(width)
        for m in source.children(()):
            sub = source.subtree((m,))
            found = None
            for n in sorted(targets, reverse=True):
                if slack + n - m < 0:
                    break
                if feasible(sub, subtree_at(target, (n,)), slack + n - m) is not None:
                    found = n
                    break
            if found is None:
                return None
            choice.append((m, found))
        return tuple(choice)

    if feasible(t, s, 0) is None:
        return None
    mapping = {(): ()}
    stack: List[Tuple[Seq, Seq, TreeExpr, int]] = [((), (), s, 0)]
    while stack:
        u, image, target, slack = stack.pop()
        for m, n in feasible(t.subtree(u), target, slack):
            mapping[u + (m,)] = image + (n,)
            stack.append((u + (m,), image + (n,), subtree_at(target, (n,)), slack + n - m))
    return mapping


def join_of_canonical(
    alphas: Callable[[int], Ordinal], count: int, enumeration: LimitEnumeration = LimitEnumeration.INTERLEAVED
) -> TreeExpr:
    """{∅} ∪ ⋃_{m < count} m⌢T^c_{alpha_m}."""
    return join_finite([((m,), canonical_tree_c(alphas(m), enumeration=enumeration)) for m in range(count)])


def equivalent_trees(
    alpha: Ordinal,
    alphas: Callable[[int], Ordinal],
    depth: int,
    width: int,
    enumeration: LimitEnumeration = LimitEnumeration.INTERLEAVED,
) -> bool:
    """T^c_alpha and {∅} ∪ ⋃_m m⌢T^c_{alpha_m} embed into each other on truncations.

    The sources are cut at ``depth`` and ``width``; targets may use entries up to 2 * width + 2.
    """
    alpha = Ordinal.of(alpha)
    target_width = 2 * width + 2
    canonical = canonical_tree_c(alpha, enumeration=enumeration)
    join = join_of_canonical(alphas, target_width, enumeration)
    forward = find_embedding(truncate(canonical, depth, width), join, target_width)
    backward = find_embedding(truncate(join, depth, width), canonical, target_width)
    logger.debug(f"embeddings for {alpha}: forward={forward is not None}, backward={backward is not None}")
    return forward is not None and backward is not None


def embedding_inclusion_holds(c: SuslinScheme, f: Mapping[Seq, Seq], t: FiniteTree, s: FiniteTree) -> bool:
    """embed_check(f, t, s) implies R_s(C) ⊆ R_t(C)."""
    if not embed_check(f, t, s):
        return True
    return rt_set(c, explicit(s)) <= rt_set(c, explicit(t))
