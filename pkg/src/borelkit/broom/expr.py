"""Finite broom sets.

B_0 = {{∅}}; for odd alpha B_alpha holds the sets h⌢B with B ∈ B_{alpha-1}; for even alpha it holds the forks
⋃_n f_n⌢B_n over a forking sequence (heads with pairwise distinct first entries) with every B_n ∈ B_{<alpha}.
A ``BroomExpr`` describes such a set finitely. Forks are always omega-indexed, so a ``FiniteList`` of branches
repeats with fresh first entries: branch i is reused at first entry f_i(0) + k * period for every k.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable, FrozenSet, List, Optional, Tuple

from borelkit import logging
from borelkit.config.utils_config import DerivativeKind, LimitEnumeration
from borelkit.derive.derivatives import iterate
from borelkit.derive.ranks import rank_value
from borelkit.exceptions import PreconditionError, UnsupportedQueryError
from borelkit.ordinal import ZERO, Ordinal, enumerate_limit
from borelkit.trees.expr import (
    ChildrenProfile,
    CofiniteChildren,
    DeriveOf,
    Empty,
    FiniteChildren,
    InfiniteChildren,
    PatchedMembers,
    Periodic,
    Point,
    PrefixThenConstant,
    RankOf,
    TreeExpr,
    TreeFamily,
    graft,
    join_omega,
)
from borelkit.trees.rank import Rank, RankProfile
from borelkit.trees.seq import Seq, is_prefix, seq

logger = logging.get_logger(__name__)

Branch = Tuple[Seq, "BroomExpr"]


class BroomExpr:
    """Base class of the broom AST."""


@dataclass(frozen=True)
class Trivial(BroomExpr):
    """The broom set {∅}."""


@dataclass(frozen=True)
class Handle(BroomExpr):
    """h⌢B."""

    head: Seq
    sub: BroomExpr

    def __post_init__(self):
        object.__setattr__(self, "head", seq(self.head))


@dataclass(frozen=True)
class Fork(BroomExpr):
    """⋃_n f_n⌢B_n with (f_n, B_n) = family.member(n)."""

    family: "BroomFamily"


def handle(head: Seq, sub: BroomExpr) -> BroomExpr:
    """h⌢B with nested handles merged; the empty handle is dropped."""
    head = seq(head)
    if isinstance(sub, Handle):
        head, sub = head + sub.head, sub.sub
    return Handle(head, sub) if head else sub


# Families


def _check_branches(branches, name: str) -> Tuple[Branch, ...]:
    branches = tuple((seq(f), sub) for f, sub in branches)
    firsts = [f[0] for f, _ in branches if f]
    if len(firsts) != len(branches):
        raise PreconditionError(f"{name} heads should be nonempty")
    if len(set(firsts)) != len(firsts):
        raise PreconditionError(f"forking condition violated: first entries {firsts} repeat")
    return branches


def even_above(alpha: Ordinal) -> Ordinal:
    """The smallest even ordinal strictly above alpha."""
    return alpha + 2 if alpha.is_even else alpha + 1


class BroomFamily(ABC):
    """A forking sequence n -> (f_n, B_n) with a finite description."""

    @abstractmethod
    def member(self, n: int) -> Branch:
        ...

    @abstractmethod
    def index_of_first(self, e: int) -> Optional[int]:
        """The n with f_n(0) = e, if any."""

    @abstractmethod
    def fork_class(self, classify: Callable[[BroomExpr], Ordinal]) -> Ordinal:
        """The smallest even ordinal above the classes of every B_n."""

    @abstractmethod
    def closure_family(self, leaf: TreeExpr) -> TreeFamily:
        """The tree family e -> { u : (e)⌢u ∈ cl_Tr(fork) } with ``leaf`` grafted on every element."""

    @abstractmethod
    def map_subs(self, fn: Callable[[BroomExpr], BroomExpr]) -> "BroomFamily":
        ...

    @abstractmethod
    def max_constant(self) -> int:
        """The largest number appearing in the description."""

    def branch_at(self, e: int) -> Optional[Branch]:
        n = self.index_of_first(e)
        return None if n is None else self.member(n)

    def first_entries_below(self, width: int) -> List[int]:
        return [e for e in range(width) if self.index_of_first(e) is not None]


@dataclass(frozen=True)
class FiniteList(BroomFamily):
    """Branch i at first entries f_i(0) + k * period, k = 0, 1, 2, ..."""

    branches: Tuple[Branch, ...]
    period: Optional[int] = None

    def __post_init__(self):
        branches = _check_branches(self.branches, "FiniteList")
        if not branches:
            raise PreconditionError("a fork needs at least one branch")
        object.__setattr__(self, "branches", tuple(sorted(branches, key=lambda b: b[0])))
        top = max(f[0] for f, _ in branches)
        period = top + 1 if self.period is None else self.period
        if period <= top:
            raise PreconditionError(f"period should exceed every first entry ({top}) and not {period}")
        object.__setattr__(self, "period", period)

    def member(self, n: int) -> Branch:
        k = len(self.branches)
        f, sub = self.branches[n % k]
        return (f[0] + (n // k) * self.period,) + f[1:], sub

    def index_of_first(self, e: int) -> Optional[int]:
        residue, repeat = e % self.period, e // self.period
        for i, (f, _) in enumerate(self.branches):
            if f[0] == residue:
                return repeat * len(self.branches) + i
        return None

    def fork_class(self, classify) -> Ordinal:
        return even_above(max(classify(sub) for _, sub in self.branches))

    def closure_family(self, leaf: TreeExpr) -> TreeFamily:
        members: List[TreeExpr] = [Empty()] * self.period
        for f, sub in self.branches:
            members[f[0]] = graft(f[1:], broom_closure_tree(sub, leaf))
        return Periodic(tuple(members))

    def map_subs(self, fn) -> "FiniteList":
        return FiniteList(tuple((f, fn(sub)) for f, sub in self.branches), self.period)

    def max_constant(self) -> int:
        entries = [e for f, _ in self.branches for e in f]
        return max([self.period] + entries + [max_constant(sub) for _, sub in self.branches])


@dataclass(frozen=True)
class UniformTail(BroomFamily):
    """The prefix branches, then f_{p+j} = (base + j)⌢word with the same B for every j."""

    prefix: Tuple[Branch, ...]
    base: int
    word: Seq
    sub: BroomExpr

    def __post_init__(self):
        prefix = _check_branches(self.prefix, "UniformTail prefix")
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "word", seq(self.word))
        if self.base < 0:
            raise PreconditionError(f"base should be a natural and not {self.base}")
        late = [f[0] for f, _ in prefix if f[0] >= self.base]
        if late:
            raise PreconditionError(f"prefix first entries should stay below base {self.base}, got {late}")

    def member(self, n: int) -> Branch:
        if n < len(self.prefix):
            return self.prefix[n]
        return (self.base + n - len(self.prefix),) + self.word, self.sub

    def index_of_first(self, e: int) -> Optional[int]:
        if e >= self.base:
            return len(self.prefix) + e - self.base
        for n, (f, _) in enumerate(self.prefix):
            if f[0] == e:
                return n
        return None

    def fork_class(self, classify) -> Ordinal:
        return even_above(max([classify(self.sub)] + [classify(sub) for _, sub in self.prefix]))

    def closure_family(self, leaf: TreeExpr) -> TreeFamily:
        head: List[TreeExpr] = [Empty()] * self.base
        for f, sub in self.prefix:
            head[f[0]] = graft(f[1:], broom_closure_tree(sub, leaf))
        return PrefixThenConstant(tuple(head), graft(self.word, broom_closure_tree(self.sub, leaf)))

    def map_subs(self, fn) -> "UniformTail":
        return UniformTail(tuple((f, fn(sub)) for f, sub in self.prefix), self.base, self.word, fn(self.sub))

    def max_constant(self) -> int:
        entries = [e for f, _ in self.prefix for e in f] + list(self.word)
        return max([self.base, max_constant(self.sub)] + entries + [max_constant(sub) for _, sub in self.prefix])


@dataclass(frozen=True)
class RankLadder(BroomFamily):
    """f_n = (base + n)⌢word carrying the standard broom of rank pi_lam(n), with ``cap`` in place of {∅}.

    The classes of the members approach lam, so the fork has class exactly lam. Caps of infinite class are
    rejected: the sup of the member classes would no longer be lam.
    """

    lam: Ordinal
    base: int = 0
    word: Seq = ()
    enumeration: LimitEnumeration = LimitEnumeration.INTERLEAVED
    cap: BroomExpr = field(default_factory=Trivial)

    def __post_init__(self):
        object.__setattr__(self, "lam", Ordinal.of(self.lam))
        object.__setattr__(self, "word", seq(self.word))
        if not self.lam.is_limit:
            raise PreconditionError(f"a rank ladder should target a limit ordinal and not {self.lam}")
        if self.base < 0:
            raise PreconditionError(f"base should be a natural and not {self.base}")

    def member(self, n: int) -> Branch:
        sub = standard_broom(enumerate_limit(self.lam, n, self.enumeration), self.enumeration)
        if not isinstance(self.cap, Trivial):
            sub = replace_trivial(sub, self.cap)
        return (self.base + n,) + self.word, sub

    def index_of_first(self, e: int) -> Optional[int]:
        return e - self.base if e >= self.base else None

    def fork_class(self, classify) -> Ordinal:
        cap_class = classify(self.cap)
        if not cap_class.is_finite:
            raise UnsupportedQueryError(f"a rank ladder cap should have finite class and not {cap_class}")
        return self.lam

    def closure_family(self, leaf: TreeExpr) -> TreeFamily:
        return LadderClosure(self.lam, self.base, self.word, self.enumeration, broom_closure_tree(self.cap, leaf))

    def map_subs(self, fn) -> "RankLadder":
        return replace(self, cap=fn(self.cap))

    def max_constant(self) -> int:
        return max([self.base, max_constant(self.cap)] + list(self.word))


@dataclass(frozen=True)
class LadderClosure(TreeFamily):
    """e -> D^shift(word⌢cl_Tr(standard broom of rank pi_lam(e - base)) with ``leaf`` on its elements).

    Derivatives are tracked as a shift; a family derived with one kind only answers rank queries of that kind.
    """

    lam: Ordinal
    base: int
    word: Seq
    enumeration: LimitEnumeration
    leaf: TreeExpr
    shift: Ordinal = ZERO
    kind: Optional[DerivativeKind] = None

    def _underived(self, e: int) -> TreeExpr:
        beta = enumerate_limit(self.lam, e - self.base, self.enumeration)
        return graft(self.word, broom_closure_tree(standard_broom(beta, self.enumeration), self.leaf))

    def _check_kind(self, kind: DerivativeKind):
        if not self.shift.is_zero and kind is not self.kind:
            raise UnsupportedQueryError(
                f"a ladder derived with D_{self.kind.name.lower()} cannot answer D_{kind.name.lower()} queries"
            )

    def member(self, n: int) -> TreeExpr:
        if n < self.base:
            return Empty()
        t = self._underived(n)
        return t if self.shift.is_zero else iterate(self.kind, t, self.shift)

    def support(self) -> ChildrenProfile:
        missing = tuple(range(self.base))
        if self.shift.is_zero or rank_value(self.kind, self.leaf).is_unbounded:
            return CofiniteChildren(missing)
        if self.lam <= self.shift:
            return FiniteChildren(())
        return InfiniteChildren(
            description=f"rank of member >= {self.shift}",
            predicate=lambda e: e >= self.base and rank_value(self.kind, self._underived(e)).at_least(self.shift),
        )

    def rank_profile(self, kind: DerivativeKind, rank_of: RankOf) -> RankProfile:
        self._check_kind(kind)
        leaf_rank = rank_of(kind, self.leaf)
        if leaf_rank.is_unbounded:
            return RankProfile(tail=Rank.unbounded())
        if not leaf_rank.value.is_finite:
            raise UnsupportedQueryError(f"ladder leaves of infinite rank {leaf_rank} are not supported")
        if self.lam <= self.shift:
            return RankProfile()
        return RankProfile(cofinal=RankProfile(cofinal=self.lam).monus(self.shift).cofinal)

    def derived(self, kind: DerivativeKind, alpha: Ordinal, derive_of: DeriveOf) -> TreeFamily:
        self._check_kind(kind)
        return replace(self, shift=self.shift + alpha, kind=kind)


@dataclass(frozen=True)
class PatchedBranches(BroomFamily):
    """``family`` with the subs of the branches at a few first entries replaced; heads are kept."""

    family: BroomFamily
    subs: Tuple[Tuple[int, BroomExpr], ...]

    def __post_init__(self):
        subs = tuple(sorted(self.subs, key=lambda p: p[0]))
        for e, _ in subs:
            if self.family.index_of_first(e) is None:
                raise PreconditionError(f"no branch starts with {e}")
        object.__setattr__(self, "subs", subs)

    def _patch(self, e: int) -> Optional[BroomExpr]:
        for first, sub in self.subs:
            if first == e:
                return sub
        return None

    def member(self, n: int) -> Branch:
        f, sub = self.family.member(n)
        patch = self._patch(f[0])
        return f, sub if patch is None else patch

    def index_of_first(self, e: int) -> Optional[int]:
        return self.family.index_of_first(e)

    def fork_class(self, classify) -> Ordinal:
        return max([self.family.fork_class(classify)] + [even_above(classify(sub)) for _, sub in self.subs])

    def closure_family(self, leaf: TreeExpr) -> TreeFamily:
        patches = []
        for e, sub in self.subs:
            f, _ = self.family.branch_at(e)
            patches.append((e, graft(f[1:], broom_closure_tree(sub, leaf))))
        return PatchedMembers(self.family.closure_family(leaf), tuple(patches))

    def map_subs(self, fn) -> "PatchedBranches":
        return PatchedBranches(self.family.map_subs(fn), tuple((e, fn(sub)) for e, sub in self.subs))

    def max_constant(self) -> int:
        return max([self.family.max_constant()] + [max(e, max_constant(sub)) for e, sub in self.subs])


# Classification and generators


@lru_cache(maxsize=None)
def classify_broom(b: BroomExpr) -> Ordinal:
    """The least alpha with b ∈ B_alpha."""
    if isinstance(b, Trivial):
        return ZERO
    if isinstance(b, Handle):
        if isinstance(b.sub, Handle):
            return classify_broom(handle(b.head, b.sub))
        inner = classify_broom(b.sub)
        if not b.head:
            return inner
        # after merging, the inner set is {∅} or a fork, both of even class
        return inner + 1 if inner.is_even else inner + 2
    if isinstance(b, Fork):
        return b.family.fork_class(classify_broom)
    raise UnsupportedQueryError(f"unknown broom expression {b!r}")


@lru_cache(maxsize=None)
def standard_broom(alpha: Ordinal, enumeration: LimitEnumeration = LimitEnumeration.INTERLEAVED) -> BroomExpr:
    """A broom of class exactly alpha: (0)⌢ at odd steps, (n)⌢ forks at even successors, ladders at limits."""
    alpha = Ordinal.of(alpha)
    if alpha.is_zero:
        return Trivial()
    if alpha.is_odd:
        return handle((0,), standard_broom(alpha.predecessor(), enumeration))
    if alpha.is_successor:
        return Fork(UniformTail((), 0, (), standard_broom(alpha.predecessor(), enumeration)))
    return Fork(RankLadder(alpha, enumeration=enumeration))


def replace_trivial(b: BroomExpr, cap: BroomExpr) -> BroomExpr:
    """Every element s of b replaced by s⌢cap."""
    if isinstance(b, Trivial):
        return cap
    if isinstance(b, Handle):
        return handle(b.head, replace_trivial(b.sub, cap))
    if isinstance(b, Fork):
        return Fork(b.family.map_subs(lambda sub: replace_trivial(sub, cap)))
    raise UnsupportedQueryError(f"unknown broom expression {b!r}")


# Queries


@lru_cache(maxsize=None)
def broom_closure_tree(b: BroomExpr, leaf: TreeExpr = Point()) -> TreeExpr:
    """cl_Tr(b) with ``leaf`` grafted on every element; the default leaf {∅} gives the plain closure."""
    if isinstance(b, Trivial):
        return leaf
    if isinstance(b, Handle):
        return graft(b.head, broom_closure_tree(b.sub, leaf))
    if isinstance(b, Fork):
        return join_omega(b.family.closure_family(leaf))
    raise UnsupportedQueryError(f"unknown broom expression {b!r}")


def handle_of(b: BroomExpr) -> Seq:
    """h_B, the longest sequence common to all elements."""
    if isinstance(b, Handle):
        return b.head + handle_of(b.sub)
    return ()


def contains(b: BroomExpr, s: Seq) -> bool:
    s = seq(s)
    while True:
        if isinstance(b, Trivial):
            return not s
        if isinstance(b, Handle):
            if not is_prefix(b.head, s):
                return False
            s, b = s[len(b.head) :], b.sub
            continue
        if isinstance(b, Fork):
            if not s:
                return False
            branch = b.family.branch_at(s[0])
            if branch is None or not is_prefix(branch[0], s):
                return False
            s, b = s[len(branch[0]) :], branch[1]
            continue
        raise UnsupportedQueryError(f"unknown broom expression {b!r}")


@lru_cache(maxsize=None)
def denotation(b: BroomExpr, width: int) -> FrozenSet[Seq]:
    """The elements of b whose entries are all below ``width``."""
    if isinstance(b, Trivial):
        return frozenset({()})
    if isinstance(b, Handle):
        if any(e >= width for e in b.head):
            return frozenset()
        return frozenset(b.head + s for s in denotation(b.sub, width))
    if isinstance(b, Fork):
        result = set()
        for e in b.family.first_entries_below(width):
            f, sub = b.family.branch_at(e)
            if all(x < width for x in f):
                result.update(f + s for s in denotation(sub, width))
        return frozenset(result)
    raise UnsupportedQueryError(f"unknown broom expression {b!r}")


def restrict(b: BroomExpr, h: Seq) -> Optional[BroomExpr]:
    """B(h) = { s ∈ B : h ⊑ s }, or None when it is empty."""
    h = seq(h)
    if not h:
        return b
    if isinstance(b, Trivial):
        return None
    if isinstance(b, Handle):
        if is_prefix(h, b.head):
            return b
        if not is_prefix(b.head, h):
            return None
        inner = restrict(b.sub, h[len(b.head) :])
        return None if inner is None else handle(b.head, inner)
    if isinstance(b, Fork):
        branch = b.family.branch_at(h[0])
        if branch is None:
            return None
        f, sub = branch
        if is_prefix(h, f):
            return handle(f, sub)
        if not is_prefix(f, h):
            return None
        inner = restrict(sub, h[len(f) :])
        return None if inner is None else handle(f, inner)
    raise UnsupportedQueryError(f"unknown broom expression {b!r}")


def max_constant(b: BroomExpr) -> int:
    """The largest number in the description of b; standard brooms only add zeros."""
    if isinstance(b, Trivial):
        return 0
    if isinstance(b, Handle):
        return max((max_constant(b.sub),) + b.head)
    if isinstance(b, Fork):
        return b.family.max_constant()
    raise UnsupportedQueryError(f"unknown broom expression {b!r}")
