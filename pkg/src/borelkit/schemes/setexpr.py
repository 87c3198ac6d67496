"""Set expressions over a finite universe and their F_alpha class certificates."""
from dataclasses import dataclass
from typing import FrozenSet, Hashable, Iterable, Tuple

from borelkit.exceptions import PreconditionError
from borelkit.ordinal import Ordinal

Atom = Hashable
Subset = FrozenSet[Atom]


@dataclass(frozen=True)
class Universe:
    elements: Subset

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(self.elements))
        if not self.elements:
            raise ValueError("a universe should have at least one element")

    @classmethod
    def of_size(cls, size: int) -> "Universe":
        return cls(frozenset(range(size)))

    def __contains__(self, x) -> bool:
        return x in self.elements

    def __iter__(self):
        return iter(sorted(self.elements, key=repr))

    def __len__(self):
        return len(self.elements)

    def check_subset(self, subset: Iterable[Atom], what: str = "set") -> Subset:
        subset = frozenset(subset)
        if not subset <= self.elements:
            raise PreconditionError(f"{what} {sorted(subset - self.elements, key=repr)} is outside the universe")
        return subset


class SetExpr:
    """Base of Base / Union / Inter."""


@dataclass(frozen=True)
class Base(SetExpr):
    value: Subset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "value", frozenset(self.value))


@dataclass(frozen=True)
class Union(SetExpr):
    items: Tuple[SetExpr, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))


@dataclass(frozen=True)
class Inter(SetExpr):
    items: Tuple[SetExpr, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        if not self.items:
            raise ValueError("an intersection should have at least one item")


def evaluate(e: SetExpr) -> Subset:
    if isinstance(e, Base):
        return e.value
    if isinstance(e, Union):
        return frozenset().union(*(evaluate(item) for item in e.items))
    if isinstance(e, Inter):
        values = [evaluate(item) for item in e.items]
        return frozenset.intersection(*values)
    raise PreconditionError(f"unknown set expression {e!r}")


def set_class(e: SetExpr) -> Ordinal:
    """Smallest alpha such that the expression's shape certifies membership in F_alpha."""
    if isinstance(e, Base):
        return Ordinal.of(0)
    items = max((set_class(item) for item in e.items), default=Ordinal.of(0))
    k = items.to_int()
    if isinstance(e, Union):
        return Ordinal.of(k + 1 if k % 2 == 0 else k + 2)
    if isinstance(e, Inter):
        return Ordinal.of(k + 2 if k % 2 == 0 else k + 1)
    raise PreconditionError(f"unknown set expression {e!r}")


def certifies(e: SetExpr, alpha: Ordinal) -> bool:
    return set_class(e) <= Ordinal.of(alpha)


def max_width(e: SetExpr) -> int:
    """Longest item list anywhere in the expression."""
    if isinstance(e, Base):
        return 1
    return max([len(e.items)] + [max_width(item) for item in e.items])


def atoms_of(e: SetExpr) -> Subset:
    if isinstance(e, Base):
        return e.value
    return frozenset().union(*(atoms_of(item) for item in e.items))
