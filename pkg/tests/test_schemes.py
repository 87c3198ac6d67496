import pytest
from helpers.exception import assert_fail_with

from borelkit.exceptions import ClassMismatchError, PreconditionError
from borelkit.ordinal import OMEGA, Ordinal
from borelkit.random import make_rng
from borelkit.schemes import (
    Base,
    Inter,
    LeafScheme,
    Union,
    Universe,
    certifies,
    compile_simple,
    eval_scheme,
    evaluate,
    extend_scheme,
    restrict_scheme,
    set_class,
    shrink_scheme,
)
from borelkit.trees import cl_tr, full_tree
from borelkit.verify.generators import random_set_expr

A = Base({0})
B = Base({1})
C = Base({1, 2})


def test_single_leaf_scheme():
    h = LeafScheme(cl_tr([()]), {(): {"a"}})
    assert eval_scheme(h) == {"a"}


def test_one_level_scheme_is_a_union():
    h = LeafScheme(cl_tr([(0,), (1,)]), {(0,): {"a"}, (1,): {"b"}})
    assert eval_scheme(h) == {"a", "b"}


def test_two_level_scheme_is_an_intersection_of_unions():
    assign = {(0, 0): {"a"}, (0, 1): {"b"}, (1, 0): {"b"}, (1, 1): {"c"}}
    values = extend_scheme(LeafScheme(full_tree(2, 2), assign))
    assert values[(0,)] == {"a", "b"}
    assert values[(1,)] == {"b", "c"}
    assert values[()] == {"b"}


def test_scheme_needs_values_exactly_on_leaves():
    with assert_fail_with(PreconditionError, "exactly on the leaves"):
        LeafScheme(cl_tr([(0,), (1,)]), {(0,): {"a"}})
    with assert_fail_with(PreconditionError, "exactly on the leaves"):
        LeafScheme(cl_tr([(0,)]), {(0,): {"a"}, (): {"a"}})


def test_restriction_shrinks():
    h = LeafScheme(cl_tr([(0,), (1,)]), {(0,): {0, 1}, (1,): {2}})
    x = {0, 2}
    restricted = restrict_scheme(h, x)
    assert restricted.assign == {(0,): {0}, (1,): {2}}
    assert shrink_scheme(h, x, restricted)
    assert shrink_scheme(h, x, h)
    assert not shrink_scheme(restricted, x, h)
    assert eval_scheme(restricted) == eval_scheme(h) & x


def test_shrink_needs_the_same_tree():
    h = LeafScheme(cl_tr([(0,)]), {(0,): {0}})
    h2 = LeafScheme(cl_tr([(1,)]), {(1,): {0}})
    with assert_fail_with(PreconditionError):
        shrink_scheme(h, {0}, h2)


@pytest.mark.parametrize(
    "e, expected",
    [
        (A, 0),
        (Union((A,)), 1),
        (Union(()), 1),
        (Inter((A,)), 2),
        (Inter((Union((A, B)),)), 2),
        (Union((Inter((A,)),)), 3),
        (Union((Union((A,)),)), 3),
        (Inter((Union((Inter((A,)),)),)), 4),
    ],
)
def test_set_class(e, expected: int):
    assert set_class(e) == Ordinal.of(expected)
    assert certifies(e, Ordinal.of(expected))
    assert certifies(e, OMEGA)


def test_empty_intersection_and_universe():
    with assert_fail_with(ValueError, "at least one item"):
        Inter(())
    with assert_fail_with(ValueError, "at least one element"):
        Universe(frozenset())
    assert len(Universe.of_size(3)) == 3


def test_compile_base_at_zero():
    h = compile_simple(A, 0, width=2)
    assert h.tree.nodes == frozenset({()})
    assert eval_scheme(h) == {0}


def test_compile_union_pads_with_the_value():
    h = compile_simple(Union((A, B)), 1, width=3)
    assert h.tree.nodes == frozenset({(), (0,), (1,), (2,)})
    assert h.assign[(0,)] == {0}
    assert h.assign[(1,)] == {1}
    assert h.assign[(2,)] == {0, 1}
    assert eval_scheme(h) == {0, 1}


def test_compile_intersection_of_unions():
    e = Inter((Union((A, B)), C))
    h = compile_simple(e, 2, width=2)
    assert h.assign[(0, 0)] == {0}
    assert h.assign[(0, 1)] == {1}
    assert h.assign[(1, 0)] == {1, 2}
    assert eval_scheme(h) == evaluate(e) == {1}


@pytest.mark.parametrize("alpha", [Ordinal.of(3), Ordinal.of(4), OMEGA])
def test_compile_at_a_higher_ordinal(alpha: Ordinal):
    e = Inter((Union((A, B)), C))
    assert eval_scheme(compile_simple(e, alpha, width=3)) == {1}


def test_compile_class_mismatch():
    with assert_fail_with(ClassMismatchError, "cannot be compiled at 1"):
        compile_simple(Inter((A,)), 1, width=2)


def test_compile_width_errors():
    with assert_fail_with(PreconditionError, "width should be positive"):
        compile_simple(A, 0, width=0)
    with assert_fail_with(PreconditionError, "does not fit width 2"):
        compile_simple(Union((A, B, C)), 1, width=2)


@pytest.mark.parametrize("alpha", [0, 1, 2, 3, 4])
@pytest.mark.parametrize("seed", range(10))
def test_compile_simple_evaluates_to_the_expression(alpha: int, seed: int):
    rng = make_rng(seed, alpha)
    universe = Universe.of_size(5)
    e = random_set_expr(rng, universe, alpha, 2)
    h = compile_simple(e, alpha, width=2)
    assert eval_scheme(h) == evaluate(e)
    x = frozenset(range(3))
    assert shrink_scheme(h, x, restrict_scheme(h, x))
