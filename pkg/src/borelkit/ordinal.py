"""Ordinals below omega^omega in Cantor normal form.

An ordinal is a tuple of ``(exponent, coefficient)`` terms with strictly decreasing exponents and positive
coefficients. Python tuple comparison of such term lists is exactly the ordinal order.
"""
import numbers
import re
from dataclasses import dataclass
from functools import lru_cache, total_ordering
from typing import List, Tuple, Union

from borelkit.config.utils_config import LimitEnumeration
from borelkit.exceptions import ParseError, PreconditionError
from borelkit.pairing import decode_tuple, encode_tuple

Term = Tuple[int, int]


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: Tuple[Term, ...] = ()

    def __post_init__(self):
        terms = tuple((int(e), int(c)) for e, c in self.terms)
        object.__setattr__(self, "terms", terms)
        for (e1, _), (e2, _) in zip(terms, terms[1:]):
            if e1 <= e2:
                raise PreconditionError(f"exponents should be strictly decreasing and not {terms}")
        for e, c in terms:
            if e < 0 or c < 1:
                raise PreconditionError(f"terms should have natural exponents and positive coefficients, got {terms}")

    @classmethod
    def of(cls, value: Union["Ordinal", int]) -> "Ordinal":
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < 0:
            raise PreconditionError(f"cannot build an ordinal from {value!r}")
        value = int(value)
        return cls(((0, value),)) if value > 0 else cls()

    @classmethod
    def omega_power(cls, exponent: int, coefficient: int = 1) -> "Ordinal":
        return cls(((exponent, coefficient),))

    def __lt__(self, other) -> bool:
        return self.terms < Ordinal.of(other).terms

    def __eq__(self, other) -> bool:
        if isinstance(other, numbers.Integral) and not isinstance(other, bool):
            return other >= 0 and self.terms == Ordinal.of(other).terms
        return isinstance(other, Ordinal) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __add__(self, other) -> "Ordinal":
        return add(self, Ordinal.of(other))

    def __radd__(self, other) -> "Ordinal":
        return add(Ordinal.of(other), self)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def finite_part(self) -> int:
        if self.terms and self.terms[-1][0] == 0:
            return self.terms[-1][1]
        return 0

    @property
    def is_finite(self) -> bool:
        return all(e == 0 for e, _ in self.terms)

    @property
    def is_successor(self) -> bool:
        return self.finite_part > 0

    @property
    def is_limit(self) -> bool:
        return not self.is_zero and self.finite_part == 0

    @property
    def limit_part(self) -> "Ordinal":
        return Ordinal(tuple(t for t in self.terms if t[0] > 0))

    def to_int(self) -> int:
        if not self.is_finite:
            raise PreconditionError(f"{self} is not finite")
        return self.finite_part

    def predecessor(self) -> "Ordinal":
        if not self.is_successor:
            raise PreconditionError(f"{self} has no predecessor")
        return self.limit_part + (self.finite_part - 1)

    def successor(self) -> "Ordinal":
        return self + 1

    def coefficient(self, exponent: int) -> int:
        for e, c in self.terms:
            if e == exponent:
                return c
        return 0

    def decompose(self) -> Tuple["Ordinal", int, int]:
        """alpha = lambda + 2n + i with lambda limit or zero and i in {0, 1}."""
        k = self.finite_part
        return self.limit_part, k // 2, k % 2

    @property
    def parity(self) -> int:
        return self.finite_part % 2

    @property
    def is_even(self) -> bool:
        return self.parity == 0

    @property
    def is_odd(self) -> bool:
        return self.parity == 1

    def alpha_prime(self) -> "Ordinal":
        lam, n, _ = self.decompose()
        return lam + n

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)})"


ZERO = Ordinal()
ONE = Ordinal.of(1)
OMEGA = Ordinal.omega_power(1)


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b.is_zero:
        return a
    lead_exponent, lead_coefficient = b.terms[0]
    kept = [t for t in a.terms if t[0] > lead_exponent]
    merged = a.coefficient(lead_exponent) + lead_coefficient
    return Ordinal(tuple(kept) + ((lead_exponent, merged),) + b.terms[1:])


def left_subtract(a: Ordinal, b: Ordinal) -> Ordinal:
    """The unique d with a + d = b, for a <= b."""
    if b < a:
        raise PreconditionError(f"cannot subtract {a} from the left of the smaller ordinal {b}")
    for i, term_b in enumerate(b.terms):
        if i >= len(a.terms):
            return Ordinal(b.terms[i:])
        term_a = a.terms[i]
        if term_a == term_b:
            continue
        (ea, ca), (eb, cb) = term_a, term_b
        if ea == eb:
            return Ordinal(((eb, cb - ca),) + b.terms[i + 1 :])
        return Ordinal(b.terms[i:])
    return ZERO


def monus(a: Ordinal, b: Ordinal) -> Ordinal:
    """-b + a when b <= a, else zero."""
    return left_subtract(b, a) if b <= a else ZERO


def decompose(a: Ordinal) -> Tuple[Ordinal, int, int]:
    return a.decompose()


def alpha_prime(a: Ordinal) -> Ordinal:
    return a.alpha_prime()


_TERM_RE = re.compile(r"^(?:(?P<w>[wω])(?:\^(?P<e>\d+))?(?:\*(?P<c>\d+))?|(?P<n>\d+))$")


def parse_ordinal(text: str) -> Ordinal:
    """Parse ``w^2*3 + w*1 + 4`` style text. Terms are summed left to right with ordinal addition."""
    if not isinstance(text, str) or not text.strip():
        raise ParseError(f"ordinal text should be a non-empty string and not {text!r}")
    result = ZERO
    for raw in text.replace(" ", "").split("+"):
        match = _TERM_RE.match(raw)
        if match is None:
            raise ParseError(f"cannot parse ordinal term {raw!r} in {text!r}")
        if match.group("n") is not None:
            term = Ordinal.of(int(match.group("n")))
        else:
            exponent = int(match.group("e")) if match.group("e") is not None else 1
            coefficient = int(match.group("c")) if match.group("c") is not None else 1
            term = Ordinal.omega_power(exponent, coefficient) if coefficient > 0 else ZERO
        result = result + term
    return result


def format_ordinal(a: Ordinal) -> str:
    if a.is_zero:
        return "0"
    return " + ".join(f"w^{e}*{c}" if e > 0 else f"{c}" for e, c in a.terms)


@lru_cache(maxsize=None)
def _blocks(lam: Ordinal) -> Tuple[Tuple[Ordinal, int], ...]:
    blocks: List[Tuple[Ordinal, int]] = []
    start = ZERO
    for exponent, coefficient in lam.terms:
        for _ in range(coefficient):
            blocks.append((start, exponent))
            start = start + Ordinal.omega_power(exponent)
    return tuple(blocks)


def _check_limit(lam: Ordinal):
    if not lam.is_limit:
        raise PreconditionError(f"limit enumeration needs a limit ordinal and not {lam}")


def enumerate_limit(lam: Ordinal, n: int, scheme: LimitEnumeration = LimitEnumeration.INTERLEAVED) -> Ordinal:
    """pi_lambda(n).

    [0, lambda) is cut into blocks of type omega^e, one per unit of each CNF coefficient. Index n visits
    block ``n mod B`` and position ``n div B`` inside it; a position in an omega^e block is decoded into an
    e-tuple of naturals (the CNF coefficients of exponents e-1, ..., 0) by iterated Cantor pairing.
    SWAPPED walks the blocks in reverse order and reads the tuple backwards.
    """
    _check_limit(lam)
    if n < 0:
        raise PreconditionError(f"index should be a natural and not {n}")
    blocks = _blocks(lam)
    b, k = n % len(blocks), n // len(blocks)
    if scheme is LimitEnumeration.SWAPPED:
        b = len(blocks) - 1 - b
    start, exponent = blocks[b]
    digits = decode_tuple(k, exponent)
    if scheme is LimitEnumeration.SWAPPED:
        digits = digits[::-1]
    offset = Ordinal(tuple((exponent - 1 - j, d) for j, d in enumerate(digits) if d > 0))
    return start + offset


def enumeration_index(lam: Ordinal, beta: Ordinal, scheme: LimitEnumeration = LimitEnumeration.INTERLEAVED) -> int:
    """Inverse of ``enumerate_limit``."""
    _check_limit(lam)
    if not beta < lam:
        raise PreconditionError(f"{beta} is not below {lam}")
    blocks = _blocks(lam)
    for b, (start, exponent) in enumerate(blocks):
        end = start + Ordinal.omega_power(exponent)
        if start <= beta < end:
            offset = left_subtract(start, beta)
            digits = tuple(offset.coefficient(exponent - 1 - j) for j in range(exponent))
            if scheme is LimitEnumeration.SWAPPED:
                digits = digits[::-1]
                b = len(blocks) - 1 - b
            return encode_tuple(digits) * len(blocks) + b
    raise AssertionError(f"{beta} below {lam} fell outside every block")
