"""Suslin schemes with a finite domain.

Values are stored on a finite tree (the domain). Outside the domain a scheme is extended by the following
convention: above a domain leaf the value stays the leaf's value, and a sequence leaving the domain through an
internal node gets the empty set. This keeps the scheme monotone and makes every omega-union effectively finite.
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional

from borelkit.exceptions import PreconditionError
from borelkit.schemes.setexpr import Subset, Universe
from borelkit.trees.finite import FiniteTree
from borelkit.trees.seq import Seq, seq


@dataclass(frozen=True)
class SuslinScheme:
    universe: Universe
    domain: FiniteTree
    values: Mapping[Seq, Subset] = field(hash=False)

    def __post_init__(self):
        values = {tuple(s): frozenset(v) for s, v in dict(self.values).items()}
        object.__setattr__(self, "values", values)
        if self.domain.is_empty:
            raise PreconditionError("a Suslin scheme needs a nonempty domain")
        if set(values) != set(self.domain.nodes):
            raise PreconditionError("values should be given exactly on the domain")
        for s, v in values.items():
            self.universe.check_subset(v, f"value at {s}")
            if s and not v <= values[s[:-1]]:
                raise PreconditionError(f"scheme is not monotone: C({s}) is not contained in C({s[:-1]})")

    def __hash__(self):
        return hash((self.universe, self.domain, frozenset(self.values.items())))

    @property
    def depth(self) -> int:
        return self.domain.height()

    def anchor(self, s: Seq) -> Seq:
        """Longest prefix of s inside the domain."""
        s = tuple(s)
        k = len(s)
        while s[:k] not in self.domain:
            k -= 1
        return s[:k]

    def value(self, s: Seq) -> Subset:
        s = seq(s)
        if s in self.domain:
            return self.values[s]
        anchor = self.anchor(s)
        if self.domain.is_leaf(anchor):
            return self.values[anchor]
        return frozenset()

    def is_beyond_leaf(self, s: Seq) -> bool:
        """s extends a domain leaf, so every extension of s has the same value."""
        return self.domain.is_leaf(self.anchor(s))

    def relevant_children(self, s: Seq) -> List[int]:
        """Entries n for which s⌢n can carry a nonempty value different from a constant continuation."""
        s = tuple(s)
        if self.is_beyond_leaf(s):
            return [0]
        if s in self.domain:
            return self.domain.children(s)
        return []

    def leaf_union(self, h: Seq = ()) -> Subset:
        """Union of the leaf values above h, i.e. A(C) restricted to sequences through h."""
        h = tuple(h)
        if h not in self.domain:
            return self.value(h)
        return frozenset().union(*(self.values[t] for t in self.domain.leaves() if t[: len(h)] == h))

    def max_entry(self) -> int:
        return self.domain.max_entry()

    def map_values(self, f: Callable[[Subset], Subset]) -> "SuslinScheme":
        return SuslinScheme(self.universe, self.domain, {s: f(v) for s, v in self.values.items()})


def constant_scheme(universe: Universe, value: Subset) -> SuslinScheme:
    return SuslinScheme(universe, FiniteTree(frozenset({()})), {(): frozenset(value)})


def scheme_from_table(universe: Universe, table: Mapping[Seq, Subset]) -> SuslinScheme:
    """Build a scheme from values on a prefix-closed table."""
    return SuslinScheme(universe, FiniteTree(frozenset(tuple(s) for s in table)), table)


def suslin_operation(c: SuslinScheme) -> Subset:
    """A(C) = ⋃_σ ⋂_n C(σ|n); only branches through a domain leaf keep a nonempty value."""
    return c.leaf_union(())


def closed_scheme(c: SuslinScheme, closure: Optional[Callable[[Subset], Subset]] = None) -> SuslinScheme:
    """The scheme of closures cl(C(s)); the identity closure when none is given."""
    if closure is None:
        return c
    return c.map_values(lambda v: frozenset(closure(v)))


def refines(c: SuslinScheme, d: SuslinScheme, projection: Callable[[Seq], Seq]) -> bool:
    return all(c.value(s) <= d.value(projection(s)) for s in c.domain.nodes)


ValueTable = Dict[Seq, Subset]
