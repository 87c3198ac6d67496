"""Finite sequences of naturals, represented as plain tuples."""
from typing import Iterable, Tuple

from borelkit.exceptions import PreconditionError

Seq = Tuple[int, ...]

EMPTY_SEQ: Seq = ()


def seq(entries: Iterable[int]) -> Seq:
    result = tuple(int(e) for e in entries)
    if any(e < 0 for e in result):
        raise PreconditionError(f"sequence entries should be naturals and not {result}")
    return result


def is_prefix(s: Seq, t: Seq) -> bool:
    """s is an initial segment of t (s ⊑ t)."""
    return len(s) <= len(t) and t[: len(s)] == s


def incomparable(s: Seq, t: Seq) -> bool:
    return not is_prefix(s, t) and not is_prefix(t, s)


def prefixes(s: Seq) -> Tuple[Seq, ...]:
    return tuple(s[:k] for k in range(len(s) + 1))


def coordinate_sum(s: Seq) -> int:
    return sum(s)


def longest_common_prefix(sequences: Iterable[Seq]) -> Seq:
    sequences = list(sequences)
    if not sequences:
        return EMPTY_SEQ
    first = sequences[0]
    k = len(first)
    for other in sequences[1:]:
        k = min(k, len(other))
        for i in range(k):
            if other[i] != first[i]:
                k = i
                break
    return first[:k]
