import pytest
from helpers.exception import assert_fail_with
from helpers.objects import ordinals
from hypothesis import given
from hypothesis import strategies as st

from borelkit.config import LimitEnumeration
from borelkit.exceptions import ParseError, PreconditionError
from borelkit.ordinal import (
    OMEGA,
    Ordinal,
    enumerate_limit,
    enumeration_index,
    format_ordinal,
    left_subtract,
    monus,
    parse_ordinal,
)
from borelkit.pairing import decode_tuple, encode_tuple, pair, unpair


@pytest.mark.parametrize(
    "a,b,expected",
    [
        ("2", "w", "w"),
        ("0", "w^2 + 3", "w^2 + 3"),
        ("w*2 + 3", "w", "w*3"),
        ("w + 5", "3", "w + 8"),
        ("w^2 + w", "w^2", "w^2*2"),
    ],
)
def test_addition(a: str, b: str, expected: str):
    assert parse_ordinal(a) + parse_ordinal(b) == parse_ordinal(expected)


@given(ordinals(), ordinals(), ordinals())
def test_addition_is_associative(a: Ordinal, b: Ordinal, c: Ordinal):
    assert (a + b) + c == a + (b + c)


@given(ordinals(), ordinals())
def test_left_subtract_inverts_addition(a: Ordinal, b: Ordinal):
    assert left_subtract(a, a + b) == b
    assert monus(a + b, a) == b


def test_left_subtract_needs_smaller_left_argument():
    with assert_fail_with(PreconditionError):
        left_subtract(OMEGA, Ordinal.of(3))


@pytest.mark.parametrize(
    "text,limit,n,i",
    [
        ("w + 5", "w", 2, 1),
        ("0", "0", 0, 0),
        ("w^2 + w*3 + 4", "w^2 + w*3", 2, 0),
    ],
)
def test_decompose(text: str, limit: str, n: int, i: int):
    assert parse_ordinal(text).decompose() == (parse_ordinal(limit), n, i)


@pytest.mark.parametrize("text,expected", [("4", "2"), ("w + 5", "w + 2"), ("w", "w"), ("1", "0")])
def test_alpha_prime(text: str, expected: str):
    assert parse_ordinal(text).alpha_prime() == parse_ordinal(expected)


def test_format_and_parse():
    assert format_ordinal(OMEGA + 1) == "w^1*1 + 1"
    assert format_ordinal(Ordinal.of(0)) == "0"
    assert parse_ordinal("ω^2*3 + ω + 4") == Ordinal(((2, 3), (1, 1), (0, 4)))
    assert str(parse_ordinal("w^2*3 + w*1 + 4")) == "w^2*3 + w^1*1 + 4"


@given(ordinals())
def test_format_round_trip(a: Ordinal):
    assert parse_ordinal(format_ordinal(a)) == a


@pytest.mark.parametrize("text", ["", "w^", "abc", "w + -1", "2.5"])
def test_parse_errors(text: str):
    with assert_fail_with(ParseError):
        parse_ordinal(text)


def test_malformed_terms():
    with assert_fail_with(PreconditionError):
        Ordinal(((1, 1), (1, 2)))
    with assert_fail_with(PreconditionError):
        Ordinal.of(-1)


def test_order():
    assert Ordinal.of(3) < OMEGA
    assert OMEGA > 3
    assert OMEGA + 1 > OMEGA
    assert parse_ordinal("w*2") < parse_ordinal("w^2")
    assert Ordinal.of(4) == 4


@pytest.mark.parametrize(
    "enumeration,expected",
    [
        (LimitEnumeration.INTERLEAVED, ["0", "w", "1", "w + 1"]),
        (LimitEnumeration.SWAPPED, ["w", "0", "w + 1", "1"]),
    ],
)
def test_enumerate_omega_times_two(enumeration: LimitEnumeration, expected):
    lam = parse_ordinal("w*2")
    assert [enumerate_limit(lam, n, enumeration) for n in range(4)] == [parse_ordinal(e) for e in expected]


@pytest.mark.parametrize("enumeration", list(LimitEnumeration))
def test_enumerate_omega_is_identity(enumeration: LimitEnumeration):
    assert [enumerate_limit(OMEGA, n, enumeration) for n in range(10)] == [Ordinal.of(n) for n in range(10)]


@pytest.mark.parametrize("enumeration", list(LimitEnumeration))
@pytest.mark.parametrize("lam", ["w", "w*2", "w^2", "w^2 + w", "w^3*2"])
def test_enumeration_is_injective_and_inverted(lam: str, enumeration: LimitEnumeration):
    lam = parse_ordinal(lam)
    values = [enumerate_limit(lam, n, enumeration) for n in range(200)]
    assert len(set(values)) == len(values)
    assert all(v < lam for v in values)
    assert [enumeration_index(lam, v, enumeration) for v in values] == list(range(200))


def test_enumeration_needs_a_limit():
    with assert_fail_with(PreconditionError):
        enumerate_limit(Ordinal.of(5), 0)
    with assert_fail_with(PreconditionError):
        enumeration_index(OMEGA, OMEGA)


@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_pairing(x: int, y: int):
    assert unpair(pair(x, y)) == (x, y)


@given(st.lists(st.integers(0, 50), min_size=1, max_size=4))
def test_tuple_coding(xs):
    assert decode_tuple(encode_tuple(xs), len(xs)) == tuple(xs)
