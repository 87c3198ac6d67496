"""Bijections between naturals and tuples of naturals.

All coders are built from the Cantor pairing function. Tuples of arity k are coded by nesting:
``encode_tuple((x0, x1, ..., x_{k-1})) = pair(x0, encode_tuple((x1, ..., x_{k-1})))``.
"""
import math
from typing import Sequence, Tuple

from borelkit.exceptions import PreconditionError


def pair(x: int, y: int) -> int:
    if x < 0 or y < 0:
        raise PreconditionError(f"pair expects naturals and not ({x}, {y})")
    s = x + y
    return s * (s + 1) // 2 + y


def unpair(n: int) -> Tuple[int, int]:
    if n < 0:
        raise PreconditionError(f"unpair expects a natural and not {n}")
    w = (math.isqrt(8 * n + 1) - 1) // 2
    t = w * (w + 1) // 2
    y = n - t
    return w - y, y


def encode_tuple(xs: Sequence[int]) -> int:
    """pi_k: omega^k -> omega for k = len(xs) >= 1."""
    if len(xs) == 0:
        raise PreconditionError("encode_tuple expects a tuple of arity at least 1")
    if len(xs) == 1:
        if xs[0] < 0:
            raise PreconditionError(f"encode_tuple expects naturals and not {xs[0]}")
        return xs[0]
    return pair(xs[0], encode_tuple(xs[1:]))


def decode_tuple(n: int, arity: int) -> Tuple[int, ...]:
    if arity < 1:
        raise PreconditionError(f"arity should be at least 1 and not {arity}")
    if arity == 1:
        return (n,)
    x, rest = unpair(n)
    return (x,) + decode_tuple(rest, arity - 1)
