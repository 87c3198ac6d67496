import json

import pytest
from helpers.context import TestContext
from helpers.exception import assert_fail_with
from helpers.objects import fork_omega, sierpinski, two_point_scheme
from packaging.version import Version

from borelkit.broom import (
    ConeStrategy,
    FiniteList,
    Fork,
    Handle,
    ListedStrategy,
    RankLadder,
    Trivial,
    extend_broom,
    inf_closure_tree,
)
from borelkit.constants import DOCUMENT_VERSION
from borelkit.exceptions import ParseError
from borelkit.ordinal import OMEGA, Ordinal
from borelkit.schemes import Base, Inter, LeafScheme, Union
from borelkit.serialize import (
    decode,
    decode_as,
    dumps,
    dumps_object,
    encode,
    load_counterexample,
    load_object,
    loads_object,
    save_counterexample,
    save_object,
    to_document,
)
from borelkit.trees import FiniteTree, Full, Point, Ray, canonical_tree, cl_tr, explicit, graft, join_finite


@pytest.mark.parametrize(
    "obj",
    [
        Point(),
        Full(),
        Ray(2),
        graft((1, 2), Point()),
        explicit(cl_tr([(0, 1), (3,)])),
        join_finite([((0,), Point()), ((2,), Full())]),
        canonical_tree(Ordinal(((1, 2),))),
        cl_tr([(4, 4)]),
        OMEGA + 3,
        Inter((Union((Base({0}), Base({"a", (1, 2)}))),)),
        LeafScheme(cl_tr([(0,), (1,)]), {(0,): {"a"}, (1,): set()}),
        two_point_scheme(extra=True),
        Handle((1,), fork_omega()),
        Fork(FiniteList((((0, 1), Trivial()), ((1,), Trivial())), period=4)),
        Fork(RankLadder(OMEGA, base=1, word=(2,), cap=fork_omega())),
        extend_broom(Trivial(), ConeStrategy(offset=2, tail_prefix=(1,), tail_entry=3)),
        extend_broom(fork_omega(), ListedStrategy(((0, 4), (1,)))),
        extend_broom(fork_omega(), per_leaf=[((1,), ListedStrategy(((2, 7),), tail_entry=4))]),
        inf_closure_tree(extend_broom(fork_omega(), per_leaf=[((1,), ConeStrategy(offset=3))])),
        sierpinski(),
    ],
    ids=lambda obj: type(obj).__name__,
)
def test_object_documents(obj):
    text = dumps_object(obj)
    assert json.loads(text)["version"] == str(DOCUMENT_VERSION)
    assert loads_object(text) == obj


def test_tagged_encoding():
    assert encode(Point()) == {"type": "point"}
    assert encode(Ordinal.of(3)) == {"type": "ordinal", "value": "3"}
    assert decode({"type": "ordinal", "value": 5}) == Ordinal.of(5)
    assert decode({"type": "explicit", "nodes": [[], [0]]}) == explicit(cl_tr([(0,)]))


def test_space_from_a_preorder():
    data = {"type": "space", "points": ["i", "p"], "preorder": [["p", "i"]]}
    assert decode(data) == sierpinski()


def test_ladder_defaults():
    data = {"type": "rank_ladder", "lam": "w^2"}
    assert decode(data) == RankLadder(Ordinal(((2, 1),)))


@pytest.mark.parametrize(
    "data, error_msg",
    [
        ([], "a 'type' field"),
        ({"type": "nope"}, "unknown type"),
        ({"type": "graft", "sub": {"type": "point"}}, "malformed 'graft'"),
        ({"type": "explicit", "nodes": [[-1]]}, "list of naturals"),
        ({"type": "base", "value": "abc"}, "should be a list"),
        ({"type": "ordinal", "value": 2.5}, "string or a natural"),
        ({"type": "rank_ladder", "lam": "w", "enumeration": "sideways"}, "is not one of"),
    ],
)
def test_malformed_documents(data, error_msg: str):
    with assert_fail_with(ParseError, error_msg):
        decode(data)


def test_decode_as_checks_the_type():
    assert decode_as(encode(Point()), Point) == Point()
    with assert_fail_with(ParseError, "expected a FiniteTree"):
        decode_as(encode(Point()), FiniteTree)


def test_newer_documents_are_rejected():
    document = to_document(Point())
    document["version"] = str(Version("99.0"))
    with assert_fail_with(ParseError, "current `borelkit` document version"):
        loads_object(json.dumps(document))
    document["version"] = "not a version"
    with assert_fail_with(ParseError, "malformed Document"):
        loads_object(json.dumps(document))


def test_documents_without_a_version_are_accepted():
    assert loads_object(json.dumps(encode(Ray(1)))) == Ray(1)


def test_invalid_json():
    with assert_fail_with(ParseError, "invalid JSON"):
        loads_object("{")
    with assert_fail_with(ParseError, "should be a JSON object"):
        loads_object("[1, 2]")


def test_save_and_load_object():
    test_context = TestContext()
    path = test_context.get_auto_remove_tmp_dir() / "nested" / "tree.json"
    save_object(canonical_tree(Ordinal.of(3)), path)
    assert load_object(path) == canonical_tree(Ordinal.of(3))
    with assert_fail_with(ParseError, "cannot read"):
        load_object(path.parent / "missing.json")


def test_dumps_is_deterministic():
    data = {"b": frozenset({3, 1, 2}), "a": [OMEGA, Version("1.0")], 7: (1, 2)}
    assert dumps(data) == dumps(dict(reversed(list(data.items()))))
    assert json.loads(dumps(data)) == {"a": ["w^1*1", "1.0"], "b": [1, 2, 3], "7": [1, 2]}


def test_counterexample_round_trip():
    test_context = TestContext()
    inputs = {"c": two_point_scheme(), "t": explicit(cl_tr([(1,)])), "x": "a", "alphas": [Ordinal.of(1), OMEGA]}
    path = save_counterexample(
        test_context.get_auto_remove_tmp_dir(), "counterexample.json", "rt-oracle", 3, 7, "mismatch", inputs
    )
    document, loaded = load_counterexample(path)
    assert (document.suite, document.seed, document.case, document.message) == ("rt-oracle", 3, 7, "mismatch")
    assert document.version == DOCUMENT_VERSION
    assert loaded == inputs
