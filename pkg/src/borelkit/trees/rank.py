"""Rank values and child-rank profiles.

A rank is either ``EMPTY`` (the rank of the empty tree, written -1), an ordinal below omega^omega, or
``UNBOUNDED`` (the tree never stabilizes at a countable stage below omega^omega, i.e. omega_1 for r_l and r_i).
"""
from dataclasses import dataclass
from enum import Enum, auto
from functools import total_ordering
from typing import Optional, Tuple

from borelkit.config.utils_config import DerivativeKind
from borelkit.ordinal import ZERO, Ordinal, left_subtract


class RankState(Enum):
    EMPTY = auto()
    ORDINAL = auto()
    UNBOUNDED = auto()


_STATE_ORDER = {RankState.EMPTY: 0, RankState.ORDINAL: 1, RankState.UNBOUNDED: 2}


@total_ordering
@dataclass(frozen=True)
class Rank:
    state: RankState
    value: Optional[Ordinal] = None

    def __post_init__(self):
        if (self.state is RankState.ORDINAL) != (self.value is not None):
            raise ValueError(f"an ordinal rank needs exactly one value and not {self.state}, {self.value}")

    @classmethod
    def empty(cls) -> "Rank":
        return cls(RankState.EMPTY)

    @classmethod
    def of(cls, value) -> "Rank":
        return cls(RankState.ORDINAL, Ordinal.of(value))

    @classmethod
    def unbounded(cls) -> "Rank":
        return cls(RankState.UNBOUNDED)

    @property
    def is_empty(self) -> bool:
        return self.state is RankState.EMPTY

    @property
    def is_unbounded(self) -> bool:
        return self.state is RankState.UNBOUNDED

    def _key(self):
        return (_STATE_ORDER[self.state], self.value.terms if self.value is not None else ())

    def __lt__(self, other: "Rank") -> bool:
        return self._key() < other._key()

    def at_least(self, alpha: Ordinal) -> bool:
        """r >= alpha, i.e. the alpha-th derivative is nonempty."""
        if self.is_unbounded:
            return True
        return not self.is_empty and alpha <= self.value

    def plus(self, k) -> "Rank":
        if self.state is not RankState.ORDINAL:
            return self
        return Rank.of(self.value + k)

    def monus(self, alpha: Ordinal) -> "Rank":
        """Rank of the alpha-th derivative."""
        if self.is_unbounded:
            return self
        if not self.at_least(alpha):
            return Rank.empty()
        return Rank.of(left_subtract(alpha, self.value))

    def __str__(self) -> str:
        if self.is_empty:
            return "-1"
        if self.is_unbounded:
            return "w_1"
        return str(self.value)


@dataclass(frozen=True)
class RankProfile:
    """Ranks of the nonempty members of an omega-family of subtrees.

    ``finite`` lists ranks attained finitely often, ``tail`` a rank attained infinitely often and ``cofinal`` a
    limit ordinal approached from below by infinitely many members.
    """

    finite: Tuple[Rank, ...] = ()
    tail: Optional[Rank] = None
    cofinal: Optional[Ordinal] = None

    def __post_init__(self):
        object.__setattr__(self, "finite", tuple(r for r in self.finite if not r.is_empty))
        if self.tail is not None and self.tail.is_empty:
            object.__setattr__(self, "tail", None)
        if self.cofinal is not None and not self.cofinal.is_limit:
            raise ValueError(f"cofinal should be a limit ordinal and not {self.cofinal}")

    @property
    def is_empty(self) -> bool:
        return not self.finite and self.tail is None and self.cofinal is None

    @property
    def is_infinite(self) -> bool:
        return self.tail is not None or self.cofinal is not None

    def monus(self, alpha: Ordinal) -> "RankProfile":
        cofinal = None
        if self.cofinal is not None and alpha < self.cofinal:
            cofinal = left_subtract(alpha, self.cofinal)
        return RankProfile(
            finite=tuple(r.monus(alpha) for r in self.finite),
            tail=self.tail.monus(alpha) if self.tail is not None else None,
            cofinal=cofinal,
        )

    def combine(self, kind: DerivativeKind) -> Rank:
        """Rank of a root whose children have this profile."""
        candidates = list(self.finite)
        if self.tail is not None:
            candidates.append(self.tail)
        if any(r.is_unbounded for r in candidates):
            return Rank.unbounded()
        best = Rank.of(ZERO)
        if kind is DerivativeKind.L:
            for r in candidates:
                best = max(best, r.plus(1))
        else:
            for r in candidates:
                best = max(best, r)
            if self.tail is not None:
                # infinitely many children of rank r keep the root through stage r + 1
                best = max(best, self.tail.plus(1))
        if self.cofinal is not None:
            best = max(best, Rank.of(self.cofinal))
        return best


EMPTY_PROFILE = RankProfile()


def profile_of_ranks(ranks, tail: Optional[Rank] = None) -> RankProfile:
    return RankProfile(finite=tuple(ranks), tail=tail)


__all__ = ["Rank", "RankState", "RankProfile", "EMPTY_PROFILE", "profile_of_ranks"]
