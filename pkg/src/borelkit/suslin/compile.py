"""Compiling set expressions into Suslin schemes with R_alpha(C) = eval(e).

Odd classes prefix the item schemes: C(∅) = X and C(m⌢t) = X ∩ C_m(t). Even classes expand
X = ⋂_i ⋃_j Z_{i,j} into ⋃_u X_u with X_u = ⋂_i Z_{i,u(i)}, compile every X_u two classes lower, and re-index
through rho: C(rho(s)) = ⋂_k C_{delta_k(s)}(xi_k(s)). Only the coordinates that can change a value are expanded,
so the resulting domain is finite.

Infinite classes below omega^omega follow the same two steps. At a limit alpha the items for index words of length
m are compiled at alpha_m = max(c, pi_alpha(m)), where c is the largest class among the items; every alpha_m lies
below alpha and their supremum is alpha.
"""
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from borelkit import logging
from borelkit.config.utils_config import LimitEnumeration
from borelkit.exceptions import ClassMismatchError, PreconditionError
from borelkit.ordinal import Ordinal, enumerate_limit
from borelkit.pairing import encode_tuple
from borelkit.schemes.setexpr import (
    Base,
    Inter,
    SetExpr,
    Subset,
    Union,
    Universe,
    atoms_of,
    evaluate,
    max_width,
    set_class,
)
from borelkit.suslin.coding import SeqOfSeqs, delta, pair_sequences, xi
from borelkit.suslin.scheme import SuslinScheme, constant_scheme
from borelkit.trees.finite import FiniteTree
from borelkit.trees.seq import Seq

logger = logging.get_logger(__name__)


def lift(e: SetExpr, alpha: int) -> SetExpr:
    """Wrap e in one-item unions and intersections until its class is exactly alpha."""
    if set_class(e).to_int() > alpha:
        raise ClassMismatchError(f"expression of class {set_class(e)} cannot be lifted to {alpha}")
    while set_class(e).to_int() < alpha:
        e = Union((e,)) if set_class(e).is_even else Inter((e,))
    return e


def meet(items: Sequence[SetExpr]) -> SetExpr:
    """The intersection of the items with nested intersections flattened, or a Base when every item is one."""
    flat: List[SetExpr] = []
    for item in items:
        flat.extend(item.items if isinstance(item, Inter) else (item,))
    if all(isinstance(item, Base) for item in flat):
        return Base(frozenset.intersection(*(item.value for item in flat)))
    return Inter(tuple(flat))


def limit_ladder(
    alpha: Ordinal, floor: int, m: int, enumeration: LimitEnumeration = LimitEnumeration.INTERLEAVED
) -> Ordinal:
    """alpha_m = max(floor, pi_alpha(m)) for a limit alpha."""
    return max(Ordinal.of(floor), enumerate_limit(alpha, m, enumeration))


def _union_items(item: SetExpr) -> Tuple[SetExpr, ...]:
    if isinstance(item, Union):
        return item.items if item.items else (Base(frozenset()),)
    return (item,)


class _RegularCompiler:
    def __init__(self, universe: Universe, enumeration: LimitEnumeration = LimitEnumeration.INTERLEAVED):
        self.universe = universe
        self.enumeration = enumeration
        self._cache: Dict[Tuple[SetExpr, Ordinal], SuslinScheme] = {}

    def compile(self, e: SetExpr, alpha) -> SuslinScheme:
        alpha = Ordinal.of(alpha)
        key = (e, alpha)
        if key not in self._cache:
            self._cache[key] = self._compile(e, alpha)
        return self._cache[key]

    def _compile(self, e: SetExpr, alpha: Ordinal) -> SuslinScheme:
        if alpha.is_finite:
            kappa = alpha.to_int()
            e = lift(e, kappa)
            if kappa == 0:
                return constant_scheme(self.universe, evaluate(e))
            if kappa % 2 == 1:
                return self._compile_odd(evaluate(e), e.items, alpha.predecessor())
            rows = [_union_items(item) for item in e.items]
            return self._compile_even(rows, lambda m: Ordinal.of(kappa - 2), alpha)
        if alpha.is_odd:
            items = e.items if isinstance(e, Union) else (e,)
            return self._compile_odd(evaluate(e), items, alpha.predecessor())
        rows = [_union_items(item) for item in e.items] if isinstance(e, Inter) else [_union_items(e)]
        if alpha.is_limit:
            floor = max(set_class(meet(list(items))).to_int() for items in product(*rows))
            return self._compile_even(rows, lambda m: limit_ladder(alpha, floor, m, self.enumeration), alpha)
        below = alpha.predecessor().predecessor()
        return self._compile_even(rows, lambda m: below, alpha)

    def _compile_odd(self, x: Subset, items: Sequence[SetExpr], item_class: Ordinal) -> SuslinScheme:
        if not items:
            return constant_scheme(self.universe, frozenset())
        values = {(): x}
        for m, item in enumerate(items):
            sub = self.compile(item, item_class)
            for t, v in sub.values.items():
                values[(m,) + t] = x & v
        return SuslinScheme(self.universe, FiniteTree(frozenset(values)), values)

    def _compile_even(
        self, rows: List[Tuple[SetExpr, ...]], column_class: Callable[[int], Ordinal], alpha: Ordinal
    ) -> SuslinScheme:
        """Re-indexes the item schemes; the items for index words of length m are compiled at column_class(m)."""
        sizes = [len(row) for row in rows]
        k_items = len(rows)

        @lru_cache(maxsize=None)
        def scheme_for(u: Seq) -> SuslinScheme:
            if len(u) > k_items:
                return constant_scheme(self.universe, self.universe.elements)
            if any(j >= sizes[i] for i, j in enumerate(u)):
                return constant_scheme(self.universe, frozenset())
            if not u:
                return constant_scheme(self.universe, self.universe.elements)
            return self.compile(meet([rows[i][j] for i, j in enumerate(u)]), column_class(len(u)))

        depth = max(scheme_for(u).depth for u in _index_words(sizes))
        levels = k_items + depth + 1
        values: Dict[Seq, Subset] = {}
        for svec in _coordinates(scheme_for, sizes, levels):
            values[tuple(encode_tuple(s) for s in svec)] = _value(scheme_for, svec, self.universe)
        logger.debug(
            f"class {alpha}: {k_items} items, columns at {[str(column_class(m)) for m in range(1, k_items + 1)]}, "
            f"{levels} levels, {len(values)} domain nodes"
        )
        return SuslinScheme(self.universe, FiniteTree(frozenset(values)), values)


def _index_words(sizes: Sequence[int]) -> Iterator[Seq]:
    words: List[Seq] = [()]
    for size in sizes:
        yield from words
        words = [u + (j,) for u in words for j in range(size)]
    yield from words


def _coordinates(scheme_for, sizes: Sequence[int], levels: int) -> Iterator[SeqOfSeqs]:
    """Every s = (s_1, ..., s_m), m <= levels, whose columns stay on relevant children of C_{delta_k(s)}."""
    stack: List[SeqOfSeqs] = [()]
    while stack:
        svec = stack.pop()
        yield svec
        m = len(svec)
        if m == levels:
            continue
        options: List[List[int]] = []
        for k in range(m + 2):
            if k == m + 1:
                # the diagonal entry picks the union member of item m
                options.append(list(range(sizes[m])) if m < len(sizes) else [0])
                continue
            column = scheme_for(delta(svec, k))
            options.append(column.relevant_children(xi(svec, k)))
        for entry in _product(options):
            stack.append(svec + (entry,))


def _product(options: List[List[int]]) -> Iterator[Seq]:
    words: List[Seq] = [()]
    for choices in options:
        words = [w + (n,) for w in words for n in choices]
    return iter(words)


def _value(scheme_for, svec: SeqOfSeqs, universe: Universe) -> Subset:
    result = universe.elements
    for k in range(len(svec) + 1):
        result = result & scheme_for(delta(svec, k)).value(xi(svec, k))
        if not result:
            break
    return result


def compile_regular(
    e: SetExpr,
    alpha: Ordinal,
    width: int,
    universe: Optional[Universe] = None,
    enumeration: LimitEnumeration = LimitEnumeration.INTERLEAVED,
) -> SuslinScheme:
    """A Suslin scheme C with R_alpha(C) = eval(e).

    Finite classes lift the expression to class exactly alpha. Infinite successors prefix (odd) or re-index (even)
    schemes compiled one or two classes lower, and a limit re-indexes items compiled along ``limit_ladder``.
    """
    alpha = Ordinal.of(alpha)
    kappa = set_class(e)
    if not kappa <= alpha:
        raise ClassMismatchError(f"expression of class {kappa} cannot be compiled at {alpha}")
    if max_width(e) > width:
        raise PreconditionError(f"expression has an item list of length {max_width(e)}, more than width {width}")
    if universe is None:
        atoms = atoms_of(e)
        if not atoms:
            raise PreconditionError("the universe cannot be inferred from an expression without atoms")
        universe = Universe(atoms)
    universe.check_subset(atoms_of(e), "expression atoms")
    scheme = _RegularCompiler(universe, enumeration).compile(e, alpha)
    logger.debug(f"compiled a regular representation at {alpha}: depth {scheme.depth}, {len(scheme.domain)} nodes")
    return scheme


def pair_refine(c: SuslinScheme, r: SuslinScheme) -> SuslinScheme:
    """P(rho(s, t)) = C(s) ∩ R(t) over pairs of sequences of equal length."""
    if c.universe != r.universe:
        raise PreconditionError("paired schemes should share their universe")
    levels = max(c.depth, r.depth) + 1
    values: Dict[Seq, Subset] = {}
    stack: List[Tuple[Seq, Seq]] = [((), ())]
    while stack:
        s, t = stack.pop()
        values[pair_sequences(s, t)] = c.value(s) & r.value(t)
        if len(s) == levels:
            continue
        for a in c.relevant_children(s):
            for b in r.relevant_children(t):
                stack.append((s + (a,), t + (b,)))
    return SuslinScheme(c.universe, FiniteTree(frozenset(values)), values)
