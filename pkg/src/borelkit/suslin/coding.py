"""Re-indexing of sequences of sequences.

An element of S_m is a tuple (s_1, ..., s_m) with |s_k| = k + 1. Writing s_k = (s_k^0, ..., s_k^k):

* rho(s) = (pi_2(s_1), ..., pi_{m+1}(s_m)) codes each s_k by ``encode_tuple``;
* delta_k(s) = (s_1^1, s_2^2, ..., s_k^k) is the diagonal;
* xi_k(s) = (s_{k+1}^k, ..., s_m^k) is the k-th column below the diagonal.
"""
from typing import List, Sequence, Tuple

from borelkit.exceptions import PreconditionError
from borelkit.pairing import decode_tuple, encode_tuple, pair, unpair
from borelkit.trees.seq import Seq

SeqOfSeqs = Tuple[Seq, ...]


def check_svec(svec: Sequence[Seq]) -> SeqOfSeqs:
    svec = tuple(tuple(s) for s in svec)
    for k, s in enumerate(svec, start=1):
        if len(s) != k + 1:
            raise PreconditionError(f"entry {k} should have length {k + 1} and not {len(s)}: {s}")
    return svec


def rho(svec: Sequence[Seq]) -> Seq:
    return tuple(encode_tuple(s) for s in check_svec(svec))


def rho_inverse(w: Seq) -> SeqOfSeqs:
    return tuple(decode_tuple(n, k + 1) for k, n in enumerate(w, start=1))


def delta(svec: Sequence[Seq], k: int) -> Seq:
    svec = check_svec(svec)
    if not 0 <= k <= len(svec):
        raise PreconditionError(f"delta_{k} is only defined on sequences of length >= {k}")
    return tuple(svec[j - 1][j] for j in range(1, k + 1))


def xi(svec: Sequence[Seq], k: int) -> Seq:
    svec = check_svec(svec)
    if not 0 <= k <= len(svec):
        raise PreconditionError(f"xi_{k} is only defined on sequences of length >= {k}")
    return tuple(svec[j - 1][k] for j in range(k + 1, len(svec) + 1))


def delta_xi(svec: Sequence[Seq]) -> Tuple[Seq, List[Seq], List[Seq]]:
    """(rho(s), [delta_k(s)], [xi_k(s)]) for k = 0..|s|."""
    svec = check_svec(svec)
    m = len(svec)
    return rho(svec), [delta(svec, k) for k in range(m + 1)], [xi(svec, k) for k in range(m + 1)]


def extends(t: SeqOfSeqs, s: SeqOfSeqs) -> bool:
    return len(s) <= len(t) and t[: len(s)] == s


def pair_sequences(s: Seq, t: Seq) -> Seq:
    """rho(s, t) = (pair(s(0), t(0)), ..., pair(s(m-1), t(m-1))) for |s| = |t|."""
    if len(s) != len(t):
        raise PreconditionError(f"paired sequences should have equal length, got {s} and {t}")
    return tuple(pair(a, b) for a, b in zip(s, t))


def unpair_sequence(w: Seq) -> Tuple[Seq, Seq]:
    halves = [unpair(n) for n in w]
    return tuple(a for a, _ in halves), tuple(b for _, b in halves)
