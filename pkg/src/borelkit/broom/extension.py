"""Broom extensions A = { s⌢f^s_n⌢nu^s_n : s ∈ B, n ∈ omega } of finite broom sets.

A strategy fixes the forking heads and the eventually constant tails used above an element of B; the
default cone strategy takes f_n = (offset + n)⌢word and nu = tail_prefix⌢(c, c, ...). An extension carries one
strategy for every leaf plus finitely many per-leaf overrides keyed by prefixes of the leaves, so leaves can
use their own offsets, heads and tails while the description stays finite.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import FrozenSet, Mapping, Optional, Tuple

from borelkit import logging
from borelkit.broom.expr import (
    BroomExpr,
    BroomFamily,
    FiniteList,
    Fork,
    Handle,
    PatchedBranches,
    Trivial,
    UniformTail,
    broom_closure_tree,
    classify_broom,
    denotation,
    handle,
    max_constant,
    replace_trivial,
)
from borelkit.config.utils_config import DerivativeKind
from borelkit.derive.derivatives import derive_iie
from borelkit.derive.ranks import rank_value
from borelkit.exceptions import PreconditionError, UnsupportedQueryError
from borelkit.ordinal import Ordinal, add
from borelkit.trees.expr import PatchedMembers, Ray, TreeExpr, graft, join_omega, same_truncation
from borelkit.trees.seq import Seq, is_prefix, seq

logger = logging.get_logger(__name__)

# an infinite sequence core⌢(c, c, ...) with no trailing c left in core
Eventual = Tuple[Seq, int]


def normalize(core: Seq, c: int) -> Eventual:
    core = seq(core)
    while core and core[-1] == c:
        core = core[:-1]
    return core, c


class ExtensionStrategy(ABC):
    tail_prefix: Seq
    tail_entry: int

    @abstractmethod
    def head_family(self) -> BroomFamily:
        """The forking heads f_n, every one carrying {∅}."""

    def tail_tree(self) -> TreeExpr:
        return graft(self.tail_prefix, Ray(self.tail_entry))

    def leaf_tree(self) -> TreeExpr:
        """cl_Tr of { f_n⌢nu_n }, the tree grafted above every element of the base."""
        return broom_closure_tree(Fork(self.head_family()), self.tail_tree())

    def max_constant(self) -> int:
        return max((self.tail_entry,) + self.tail_prefix)


def _check_tail(tail_prefix: Seq, tail_entry: int):
    if tail_entry < 0 or any(e < 0 for e in tail_prefix):
        raise PreconditionError(f"tails should use naturals and not {tail_prefix}⌢({tail_entry}, ...)")


@dataclass(frozen=True)
class ConeStrategy(ExtensionStrategy):
    """f_n = (offset + n)⌢word, nu_n = tail_prefix⌢(c, c, ...)."""

    offset: int = 0
    word: Seq = ()
    tail_prefix: Seq = ()
    tail_entry: int = 0

    def __post_init__(self):
        object.__setattr__(self, "word", seq(self.word))
        object.__setattr__(self, "tail_prefix", seq(self.tail_prefix))
        if self.offset < 0:
            raise PreconditionError(f"offset should be a natural and not {self.offset}")
        _check_tail(self.tail_prefix, self.tail_entry)

    def head_family(self) -> BroomFamily:
        return UniformTail((), self.offset, self.word, Trivial())

    def max_constant(self) -> int:
        return max((self.offset, self.tail_entry) + self.word + self.tail_prefix)


@dataclass(frozen=True)
class ListedStrategy(ExtensionStrategy):
    """Listed heads repeated with fresh first entries every ``period`` (see ``FiniteList``)."""

    heads: Tuple[Seq, ...]
    period: Optional[int] = None
    tail_prefix: Seq = ()
    tail_entry: int = 0
    family: FiniteList = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "heads", tuple(seq(h) for h in self.heads))
        object.__setattr__(self, "tail_prefix", seq(self.tail_prefix))
        _check_tail(self.tail_prefix, self.tail_entry)
        # raises on colliding first entries
        object.__setattr__(self, "family", FiniteList(tuple((h, Trivial()) for h in self.heads), self.period))

    def head_family(self) -> BroomFamily:
        return self.family

    def max_constant(self) -> int:
        entries = [e for h in self.heads for e in h]
        return max([self.family.period, self.tail_entry] + entries + list(self.tail_prefix))


# per-leaf overrides: a leaf s uses the strategy of the longest key that is a prefix of s
Rules = Tuple[Tuple[Seq, ExtensionStrategy], ...]


def _descend(rules: Rules, default: ExtensionStrategy, h: Seq) -> Tuple[Rules, ExtensionStrategy]:
    """The rules seen from below h: keys up to h fold into the default, longer keys lose the prefix h."""
    below = []
    best = -1
    for key, strategy in rules:
        if is_prefix(key, h):
            if len(key) > best:
                best, default = len(key), strategy
        elif is_prefix(h, key):
            below.append((key[len(h) :], strategy))
    return tuple(below), default


@dataclass(frozen=True)
class InfBroomExpr:
    """A = { s⌢f^s_n⌢nu^s_n : s ∈ B, n ∈ omega }.

    A leaf s of the base uses the strategy of the longest key of ``per_leaf`` that is a prefix of s, and
    ``strategy`` when there is none. Keys that are not prefixes of any leaf are ignored.
    """

    base: BroomExpr
    strategy: ExtensionStrategy = field(default_factory=ConeStrategy)
    per_leaf: Rules = ()

    def __post_init__(self):
        per_leaf = tuple(sorted(((seq(h), strategy) for h, strategy in self.per_leaf), key=lambda r: r[0]))
        keys = [h for h, _ in per_leaf]
        if len(set(keys)) != len(keys):
            raise PreconditionError(f"per-leaf keys should be distinct and not {keys}")
        object.__setattr__(self, "per_leaf", per_leaf)

    def strategy_at(self, s: Seq) -> ExtensionStrategy:
        return _descend(self.per_leaf, self.strategy, seq(s))[1]

    def max_constant(self) -> int:
        keys = [e for h, _ in self.per_leaf for e in h]
        strategies = [self.strategy.max_constant()] + [strategy.max_constant() for _, strategy in self.per_leaf]
        return max(strategies + keys + [max_constant(self.base)])


def extend_broom(b: BroomExpr, strategy: Optional[ExtensionStrategy] = None, per_leaf=()) -> InfBroomExpr:
    return InfBroomExpr(b, strategy if strategy is not None else ConeStrategy(), tuple(per_leaf))


def cone_offsets(offsets: Mapping[Seq, int], **cone) -> Rules:
    """Per-leaf cone strategies that differ only in their offsets."""
    return tuple((seq(leaf), ConeStrategy(offset=offset, **cone)) for leaf, offset in offsets.items())


def _patched(family: BroomFamily, rules: Rules, default: ExtensionStrategy):
    """(first entry, head, sub, rules, default) for the branches whose leaves some key reaches."""
    for e in sorted({key[0] for key, _ in rules}):
        branch = family.branch_at(e)
        if branch is None:
            continue
        f, sub = branch
        below, inner = _descend(rules, default, f)
        if below or inner != default:
            yield e, f, sub, below, inner


def _leafwise_closure(b: BroomExpr, rules: Rules, default: ExtensionStrategy) -> TreeExpr:
    if not rules or isinstance(b, Trivial):
        return broom_closure_tree(b, default.leaf_tree())
    if isinstance(b, Handle):
        below, inner = _descend(rules, default, b.head)
        return graft(b.head, _leafwise_closure(b.sub, below, inner))
    if isinstance(b, Fork):
        patches = tuple(
            (e, graft(f[1:], _leafwise_closure(sub, below, inner)))
            for e, f, sub, below, inner in _patched(b.family, rules, default)
        )
        return join_omega(PatchedMembers(b.family.closure_family(default.leaf_tree()), patches))
    raise UnsupportedQueryError(f"unknown broom expression {b!r}")


def _leafwise_tilde(b: BroomExpr, rules: Rules, default: ExtensionStrategy) -> BroomExpr:
    cap = Fork(default.head_family())
    if not rules or isinstance(b, Trivial):
        return replace_trivial(b, cap)
    if isinstance(b, Handle):
        below, inner = _descend(rules, default, b.head)
        return handle(b.head, _leafwise_tilde(b.sub, below, inner))
    if isinstance(b, Fork):
        subs = tuple(
            (e, _leafwise_tilde(sub, below, inner)) for e, f, sub, below, inner in _patched(b.family, rules, default)
        )
        family = b.family.map_subs(lambda sub: replace_trivial(sub, cap))
        return Fork(PatchedBranches(family, subs) if subs else family)
    raise UnsupportedQueryError(f"unknown broom expression {b!r}")


def inf_closure_tree(a: InfBroomExpr) -> TreeExpr:
    """cl_Tr(A): the closure of the base with the tree of its strategy above every element."""
    rules, default = _descend(a.per_leaf, a.strategy, ())
    return _leafwise_closure(a.base, rules, default)


def broom_diie(a: InfBroomExpr) -> TreeExpr:
    """D_iie(cl_Tr(A)); it equals cl_Tr(B) for the base B."""
    return derive_iie(inf_closure_tree(a))


def diie_matches_closure(a: InfBroomExpr, depth: int = 4, width: int = 4) -> bool:
    derived = broom_diie(a)
    closure = broom_closure_tree(a.base)
    same_rank = rank_value(DerivativeKind.IIE, derived) == rank_value(DerivativeKind.IIE, closure)
    return same_rank and same_truncation(derived, closure, depth, width)


def b_tilde(a: InfBroomExpr) -> BroomExpr:
    """{ s⌢f^s_n : s ∈ B, n ∈ omega }."""
    rules, default = _descend(a.per_leaf, a.strategy, ())
    return _leafwise_tilde(a.base, rules, default)


def tilde_law_holds(a: InfBroomExpr) -> bool:
    """The class of B tilde is 2 + the class of B."""
    expected = add(Ordinal.of(2), classify_broom(a.base))
    actual = classify_broom(b_tilde(a))
    if actual != expected:
        logger.warning(f"B tilde has class {actual}, expected {expected}")
    return actual == expected


def inf_denotation(a: InfBroomExpr, width: int) -> FrozenSet[Eventual]:
    """The elements of A whose finite part (before the constant tail) has entries below ``width``."""
    elements = set()
    for s in denotation(a.base, width):
        strategy = a.strategy_at(s)
        if any(x >= width for x in strategy.tail_prefix):
            continue
        family = strategy.head_family()
        for e in family.first_entries_below(width):
            f = family.branch_at(e)[0]
            if all(x < width for x in f):
                elements.add(normalize(s + f + strategy.tail_prefix, strategy.tail_entry))
    return frozenset(elements)
