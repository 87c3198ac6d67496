"""Finitely described trees on omega.

Every ``TreeExpr`` denotes a tree (a prefix-closed set of sequences). The ``TreeFamily`` constructors describe the
omega-indexed unions ``{∅} ∪ ⋃_n (n)⌢F(n)``; families are an open class so other packages (brooms) can add
their own, as long as they answer ``member``, ``support``, ``rank_profile`` and ``derived``.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from borelkit import logging
from borelkit.config.utils_config import DerivativeKind, LimitEnumeration
from borelkit.exceptions import PreconditionError, UnsupportedQueryError
from borelkit.ordinal import ZERO, Ordinal, enumerate_limit, enumeration_index
from borelkit.trees.finite import FiniteTree
from borelkit.trees.rank import Rank, RankProfile
from borelkit.trees.seq import Seq, is_prefix, seq

logger = logging.get_logger(__name__)

MATERIALIZE_MAX_NODES = 200_000

RankOf = Callable[[DerivativeKind, "TreeExpr"], Rank]
DeriveOf = Callable[[DerivativeKind, "TreeExpr", Ordinal], "TreeExpr"]


# Children profiles


class ChildrenProfile:
    def contains(self, n: int) -> bool:
        raise NotImplementedError

    def entries_below(self, width: int) -> List[int]:
        return [n for n in range(width) if self.contains(n)]

    @property
    def is_finite(self) -> bool:
        return False


@dataclass(frozen=True)
class NotANode(ChildrenProfile):
    def contains(self, n: int) -> bool:
        return False

    @property
    def is_finite(self) -> bool:
        return True


@dataclass(frozen=True)
class FiniteChildren(ChildrenProfile):
    entries: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(sorted(set(self.entries))))

    def contains(self, n: int) -> bool:
        return n in self.entries

    def entries_below(self, width: int) -> List[int]:
        return [n for n in self.entries if n < width]

    @property
    def is_finite(self) -> bool:
        return True


@dataclass(frozen=True)
class CofiniteChildren(ChildrenProfile):
    """Every natural except ``missing``."""

    missing: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "missing", tuple(sorted(set(self.missing))))

    def contains(self, n: int) -> bool:
        return n not in self.missing


@dataclass(frozen=True)
class InfiniteChildren(ChildrenProfile):
    """Infinitely many children, neither finite nor cofinite; membership is decided by ``predicate``."""

    description: str
    predicate: Callable[[int], bool] = field(compare=False, hash=False, repr=False)

    def contains(self, n: int) -> bool:
        return self.predicate(n)


# Tree expressions


class TreeExpr:
    """Base class of the tree AST."""


@dataclass(frozen=True)
class Empty(TreeExpr):
    pass


@dataclass(frozen=True)
class Point(TreeExpr):
    """The tree {∅}."""


@dataclass(frozen=True)
class Full(TreeExpr):
    """The tree of all finite sequences."""


@dataclass(frozen=True)
class Ray(TreeExpr):
    """The single infinite branch (c, c, c, ...)."""

    entry: int = 0

    def __post_init__(self):
        if self.entry < 0:
            raise ValueError(f"entry should be a natural and not {self.entry}")


@dataclass(frozen=True)
class Graft(TreeExpr):
    """{prefixes of head} ∪ head⌢sub."""

    head: Seq
    sub: TreeExpr

    def __post_init__(self):
        object.__setattr__(self, "head", seq(self.head))


@dataclass(frozen=True)
class Explicit(TreeExpr):
    tree: FiniteTree


@dataclass(frozen=True)
class JoinOmega(TreeExpr):
    """{∅} ∪ ⋃_n (n)⌢family(n)."""

    family: "TreeFamily"


@dataclass(frozen=True)
class JoinFinite(TreeExpr):
    """{∅} ∪ ⋃ (prefixes of f)⌢sub over the branches; heads are nonempty with distinct first entries."""

    branches: Tuple[Tuple[Seq, TreeExpr], ...] = ()

    def __post_init__(self):
        branches = tuple(sorted(((seq(f), sub) for f, sub in self.branches), key=lambda b: b[0]))
        object.__setattr__(self, "branches", branches)
        firsts = [f[0] for f, _ in branches if f]
        if len(firsts) != len(branches):
            raise PreconditionError("JoinFinite branch heads should be nonempty")
        if len(set(firsts)) != len(firsts):
            raise PreconditionError(f"JoinFinite branch heads should have distinct first entries, got {firsts}")

    def branch(self, n: int) -> Optional[Tuple[Seq, TreeExpr]]:
        for f, sub in self.branches:
            if f[0] == n:
                return f, sub
        return None


# Families


class TreeFamily(ABC):
    """An omega-indexed family of trees with a finite description."""

    @abstractmethod
    def member(self, n: int) -> TreeExpr:
        ...

    @abstractmethod
    def support(self) -> ChildrenProfile:
        """Indices with a nonempty member."""

    @abstractmethod
    def rank_profile(self, kind: DerivativeKind, rank_of: RankOf) -> RankProfile:
        ...

    @abstractmethod
    def derived(self, kind: DerivativeKind, alpha: Ordinal, derive_of: DeriveOf) -> "TreeFamily":
        """The family n -> D^alpha(member(n))."""


@dataclass(frozen=True)
class Constant(TreeFamily):
    sub: TreeExpr

    def member(self, n: int) -> TreeExpr:
        return self.sub

    def support(self) -> ChildrenProfile:
        return FiniteChildren(()) if is_empty(self.sub) else CofiniteChildren(())

    def rank_profile(self, kind: DerivativeKind, rank_of: RankOf) -> RankProfile:
        return RankProfile(tail=rank_of(kind, self.sub))

    def derived(self, kind: DerivativeKind, alpha: Ordinal, derive_of: DeriveOf) -> TreeFamily:
        return Constant(derive_of(kind, self.sub, alpha))


@dataclass(frozen=True)
class PrefixThenConstant(TreeFamily):
    prefix: Tuple[TreeExpr, ...]
    tail: TreeExpr

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))

    def member(self, n: int) -> TreeExpr:
        return self.prefix[n] if n < len(self.prefix) else self.tail

    def support(self) -> ChildrenProfile:
        present = [n for n, sub in enumerate(self.prefix) if not is_empty(sub)]
        if is_empty(self.tail):
            return FiniteChildren(tuple(present))
        return CofiniteChildren(tuple(n for n in range(len(self.prefix)) if n not in present))

    def rank_profile(self, kind: DerivativeKind, rank_of: RankOf) -> RankProfile:
        return RankProfile(finite=tuple(rank_of(kind, sub) for sub in self.prefix), tail=rank_of(kind, self.tail))

    def derived(self, kind: DerivativeKind, alpha: Ordinal, derive_of: DeriveOf) -> TreeFamily:
        return PrefixThenConstant(
            tuple(derive_of(kind, sub, alpha) for sub in self.prefix), derive_of(kind, self.tail, alpha)
        )


@dataclass(frozen=True)
class CanonicalSeq(TreeFamily):
    """n -> D^shift(T_{pi_lambda(n)}).

    Canonical trees have the same iterated derivatives for every derivative kind, so the shift is kind-free.
    """

    lam: Ordinal
    shift: Ordinal = ZERO
    enumeration: LimitEnumeration = LimitEnumeration.INTERLEAVED

    def __post_init__(self):
        if not self.lam.is_limit:
            raise ValueError(f"lam should be a limit ordinal and not {self.lam}")

    def member(self, n: int) -> TreeExpr:
        from borelkit.derive.derivatives import iterate
        from borelkit.trees.canonical import canonical_tree

        base = canonical_tree(enumerate_limit(self.lam, n, self.enumeration), self.enumeration)
        return iterate(DerivativeKind.L, base, self.shift) if not self.shift.is_zero else base

    def support(self) -> ChildrenProfile:
        if self.shift.is_zero:
            return CofiniteChildren(())
        if self.lam <= self.shift:
            return FiniteChildren(())
        if self.shift.is_finite:
            return CofiniteChildren(
                tuple(enumeration_index(self.lam, Ordinal.of(k), self.enumeration) for k in range(self.shift.to_int()))
            )
        return InfiniteChildren(
            description=f"pi_{self.lam}(n) >= {self.shift}",
            predicate=lambda n: self.shift <= enumerate_limit(self.lam, n, self.enumeration),
        )

    def rank_profile(self, kind: DerivativeKind, rank_of: RankOf) -> RankProfile:
        if self.lam <= self.shift:
            return RankProfile()
        return RankProfile(cofinal=RankProfile(cofinal=self.lam).monus(self.shift).cofinal)

    def derived(self, kind: DerivativeKind, alpha: Ordinal, derive_of: DeriveOf) -> TreeFamily:
        return CanonicalSeq(self.lam, self.shift + alpha, self.enumeration)


@dataclass(frozen=True)
class Periodic(TreeFamily):
    """n -> members[n mod len(members)]."""

    members: Tuple[TreeExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise ValueError("a periodic family should have at least one member")

    def member(self, n: int) -> TreeExpr:
        return self.members[n % len(self.members)]

    def support(self) -> ChildrenProfile:
        present = tuple(r for r, sub in enumerate(self.members) if not is_empty(sub))
        if not present:
            return FiniteChildren(())
        if len(present) == len(self.members):
            return CofiniteChildren(())
        period = len(self.members)
        return InfiniteChildren(description=f"n mod {period} in {present}", predicate=lambda n: n % period in present)

    def rank_profile(self, kind: DerivativeKind, rank_of: RankOf) -> RankProfile:
        ranks = [rank_of(kind, sub) for sub in self.members]
        return RankProfile(finite=tuple(ranks), tail=max(ranks))

    def derived(self, kind: DerivativeKind, alpha: Ordinal, derive_of: DeriveOf) -> TreeFamily:
        return Periodic(tuple(derive_of(kind, sub, alpha) for sub in self.members))


@dataclass(frozen=True)
class PatchedMembers(TreeFamily):
    """``base`` with the members at a few indices replaced by trees of the same ranks."""

    base: TreeFamily
    patches: Tuple[Tuple[int, TreeExpr], ...]

    def __post_init__(self):
        patches = tuple(sorted(self.patches, key=lambda p: p[0]))
        indices = [n for n, _ in patches]
        if len(set(indices)) != len(indices):
            raise ValueError(f"patched indices should be distinct and not {indices}")
        object.__setattr__(self, "patches", patches)

    def member(self, n: int) -> TreeExpr:
        for m, sub in self.patches:
            if m == n:
                return sub
        return self.base.member(n)

    def support(self) -> ChildrenProfile:
        return self.base.support()

    def rank_profile(self, kind: DerivativeKind, rank_of: RankOf) -> RankProfile:
        for n, sub in self.patches:
            if rank_of(kind, sub) != rank_of(kind, self.base.member(n)):
                raise UnsupportedQueryError(f"the patch at {n} changes the rank of the member")
        return self.base.rank_profile(kind, rank_of)

    def derived(self, kind: DerivativeKind, alpha: Ordinal, derive_of: DeriveOf) -> TreeFamily:
        patches = tuple((n, derive_of(kind, sub, alpha)) for n, sub in self.patches)
        return PatchedMembers(self.base.derived(kind, alpha, derive_of), patches)


# Smart constructors


def is_empty(t: TreeExpr) -> bool:
    if isinstance(t, Empty):
        return True
    return isinstance(t, Explicit) and t.tree.is_empty


def graft(head: Seq, sub: TreeExpr) -> TreeExpr:
    head = seq(head)
    if not head:
        return Point() if is_empty(sub) else sub
    if isinstance(sub, Graft):
        return Graft(head + sub.head, sub.sub)
    return Graft(head, sub)


def join_omega(family: TreeFamily) -> TreeExpr:
    support = family.support()
    if isinstance(support, FiniteChildren) and not support.entries:
        return Point()
    return JoinOmega(family)


def join_finite(branches) -> TreeExpr:
    kept = tuple((seq(f), sub) for f, sub in branches)
    if not kept:
        return Point()
    return JoinFinite(kept)


def explicit(tree: FiniteTree) -> TreeExpr:
    return Empty() if tree.is_empty else Explicit(tree)


# Queries


def member(t: TreeExpr, s: Seq) -> bool:
    """s belongs to the denotation of t."""
    s = seq(s)
    while True:
        if isinstance(t, Empty):
            return False
        if isinstance(t, Point):
            return not s
        if isinstance(t, Full):
            return True
        if isinstance(t, Ray):
            return all(e == t.entry for e in s)
        if isinstance(t, Explicit):
            return s in t.tree
        if isinstance(t, Graft):
            if is_prefix(s, t.head):
                return True
            if not is_prefix(t.head, s):
                return False
            s, t = s[len(t.head) :], t.sub
            if not s:
                return True
            continue
        if not s:
            return True
        if isinstance(t, JoinOmega):
            s, t = s[1:], t.family.member(s[0])
            continue
        if isinstance(t, JoinFinite):
            branch = t.branch(s[0])
            if branch is None:
                return False
            f, sub = branch
            s, t = s[1:], graft(f[1:], sub)
            continue
        raise UnsupportedQueryError(f"unknown tree expression {t!r}")


def subtree_at(t: TreeExpr, s: Seq) -> TreeExpr:
    """An expression for T^s = { u : s⌢u ∈ T }."""
    s = seq(s)
    if not member(t, s):
        raise PreconditionError(f"{s} is not a node of the tree")
    while s:
        if isinstance(t, (Full, Ray)):
            return t
        if isinstance(t, Explicit):
            return Explicit(t.tree.subtree(s))
        if isinstance(t, Graft):
            if is_prefix(s, t.head):
                return graft(t.head[len(s) :], t.sub)
            s, t = s[len(t.head) :], (Point() if is_empty(t.sub) else t.sub)
            continue
        if isinstance(t, JoinOmega):
            s, t = s[1:], t.family.member(s[0])
            continue
        if isinstance(t, JoinFinite):
            f, sub = t.branch(s[0])
            s, t = s[1:], graft(f[1:], sub)
            continue
        raise UnsupportedQueryError(f"cannot descend into {t!r}")
    return t


def root_children(t: TreeExpr) -> ChildrenProfile:
    if is_empty(t):
        return NotANode()
    if isinstance(t, Point):
        return FiniteChildren(())
    if isinstance(t, Full):
        return CofiniteChildren(())
    if isinstance(t, Ray):
        return FiniteChildren((t.entry,))
    if isinstance(t, Explicit):
        return FiniteChildren(tuple(t.tree.children(())))
    if isinstance(t, Graft):
        return FiniteChildren((t.head[0],))
    if isinstance(t, JoinOmega):
        return t.family.support()
    if isinstance(t, JoinFinite):
        return FiniteChildren(tuple(f[0] for f, _ in t.branches))
    raise UnsupportedQueryError(f"unknown tree expression {t!r}")


def children_profile(t: TreeExpr, s: Seq) -> ChildrenProfile:
    """Immediate successors of s in T."""
    if not member(t, s):
        return NotANode()
    return root_children(subtree_at(t, s))


def truncate(t: TreeExpr, depth: int, width: int) -> FiniteTree:
    """{ s ∈ T : |s| <= depth, all entries < width }."""
    if depth < 0 or width < 0:
        raise PreconditionError(f"depth and width should be naturals and not ({depth}, {width})")
    if is_empty(t):
        return FiniteTree()
    nodes = [()]
    frontier = [((), t)]
    for _ in range(depth):
        next_frontier = []
        for s, sub in frontier:
            for n in root_children(sub).entries_below(width):
                next_frontier.append((s + (n,), subtree_at(sub, (n,))))
        nodes.extend(s for s, _ in next_frontier)
        frontier = next_frontier
    return FiniteTree(frozenset(nodes))


def materialize(t: TreeExpr, max_nodes: int = MATERIALIZE_MAX_NODES) -> Optional[FiniteTree]:
    """The denotation as a FiniteTree, or None when it is infinite."""
    if is_empty(t):
        return FiniteTree()
    nodes = []
    stack = [((), t, frozenset())]
    while stack:
        s, sub, ancestors = stack.pop()
        nodes.append(s)
        if len(nodes) > max_nodes:
            raise UnsupportedQueryError(f"tree has more than {max_nodes} nodes")
        profile = root_children(sub)
        if not profile.is_finite:
            return None
        on_path = ancestors | {sub}
        for n in profile.entries:
            child = subtree_at(sub, (n,))
            if child in on_path:
                # a repeated subtree along a branch unfolds into an infinite branch
                return None
            stack.append((s + (n,), child, on_path))
    return FiniteTree(frozenset(nodes))


def is_finite(t: TreeExpr) -> bool:
    return materialize(t) is not None


def node_count(t: TreeExpr) -> Optional[int]:
    tree = materialize(t)
    return None if tree is None else len(tree)


def same_truncation(a: TreeExpr, b: TreeExpr, depth: int, width: int) -> bool:
    return truncate(a, depth, width) == truncate(b, depth, width)


def height(t: TreeExpr) -> Optional[int]:
    """sup of the lengths of the nodes; None when unbounded and -1 for the empty tree."""
    if is_empty(t):
        return -1
    if isinstance(t, Point):
        return 0
    if isinstance(t, (Full, Ray)):
        return None
    if isinstance(t, Explicit):
        return t.tree.height()
    if isinstance(t, Graft):
        sub = height(t.sub)
        return None if sub is None else len(t.head) + max(sub, 0)
    if isinstance(t, JoinFinite):
        subs = [height(graft(f[1:], sub)) for f, sub in t.branches]
        return None if None in subs else 1 + max(subs)
    if isinstance(t, JoinOmega):
        family = t.family
        if isinstance(family, Constant):
            sub = height(family.sub)
            return None if sub is None else 1 + sub
        if isinstance(family, PrefixThenConstant):
            subs = [height(sub) for sub in family.prefix + (family.tail,)]
            return None if None in subs else 1 + max(subs)
        if isinstance(family, Periodic):
            subs = [height(sub) for sub in family.members]
            return None if None in subs else 1 + max(subs)
        if isinstance(family, CanonicalSeq):
            # members D^shift(T_beta) have unbounded height along the enumeration
            return None
        tree = materialize(t)
        if tree is not None:
            return tree.height()
    raise UnsupportedQueryError(f"cannot bound the height of {t!r}")
