import pytest
from helpers.exception import assert_fail_with
from helpers.objects import ray_graft_trees
from hypothesis import given, settings

from borelkit.config import DerivativeKind
from borelkit.derive import Rank, derive_finite_tree, derive_i, derive_iie, derive_l, iterate, rank, rank_value
from borelkit.derive.oracle import falsify_derivative, falsify_derivative_claim, limit_stage_check
from borelkit.derive.ranks import is_well_founded, naive_leaf_rank, rank_ordinal
from borelkit.exceptions import IllFoundedTreeError, UnsupportedQueryError
from borelkit.ordinal import OMEGA, Ordinal, parse_ordinal
from borelkit.random import make_rng
from borelkit.trees import Empty, Full, Point, Ray, canonical_tree, cl_tr, explicit, graft, is_empty, materialize
from borelkit.trees import Constant, join_finite, join_omega, member, same_truncation
from borelkit.verify.generators import random_finite_tree

CANONICAL = ["0", "1", "2", "3", "5", "w", "w + 1", "w*2", "w^2", "w^2 + w + 3"]


def test_leaf_derivative_removes_leaves():
    t = explicit(cl_tr([(0, 1)]))
    assert materialize(derive_l(t)).nodes == frozenset({(), (0,)})


def test_finite_trees_vanish_under_infinite_derivatives():
    t = explicit(cl_tr([(0, 1), (0, 2), (3,)]))
    assert is_empty(derive_i(t))
    assert is_empty(derive_iie(t))
    assert derive_finite_tree(DerivativeKind.I, t.tree).is_empty


def test_iie_derivative_of_full_two_level_tree():
    assert same_truncation(derive_iie(canonical_tree(2)), canonical_tree(1), 3, 4)


@pytest.mark.parametrize("kind", list(DerivativeKind))
def test_iterate_canonical_tree_to_a_point(kind: DerivativeKind):
    assert iterate(kind, canonical_tree(3), Ordinal.of(3)) == Point()
    assert is_empty(iterate(kind, canonical_tree(3), Ordinal.of(4)))


@pytest.mark.parametrize("kind", list(DerivativeKind))
def test_iterate_empty_tree(kind: DerivativeKind):
    assert is_empty(iterate(kind, Empty(), OMEGA))


def test_iterate_at_limit_stage():
    t = canonical_tree(OMEGA)
    assert iterate(DerivativeKind.IIE, t, OMEGA) == Point()
    assert is_empty(iterate(DerivativeKind.IIE, t, OMEGA + 1))


@pytest.mark.parametrize("kind", list(DerivativeKind))
@pytest.mark.parametrize("alpha", CANONICAL)
def test_rank_of_canonical_tree(kind: DerivativeKind, alpha: str):
    alpha = parse_ordinal(alpha)
    assert rank(kind, canonical_tree(alpha)) == Rank.of(alpha)


def test_rank_of_small_trees():
    assert rank(DerivativeKind.L, Point()) == Rank.of(0)
    assert rank(DerivativeKind.IIE, explicit(cl_tr([(0, 1), (0, 2)]))) == Rank.of(0)
    assert rank(DerivativeKind.L, Empty()) == Rank.empty()
    assert str(rank(DerivativeKind.L, Empty())) == "-1"
    assert str(rank(DerivativeKind.L, canonical_tree(OMEGA + 1))) == "w^1*1 + 1"


def test_leaf_rank_of_graft():
    assert rank(DerivativeKind.L, graft((1, 2, 3), canonical_tree(2))) == Rank.of(5)
    assert rank(DerivativeKind.I, graft((1, 2, 3), canonical_tree(2))) == Rank.of(2)


def test_ill_founded_trees():
    assert not is_well_founded(Ray(1))
    with assert_fail_with(IllFoundedTreeError):
        rank(DerivativeKind.L, Ray(1))
    with assert_fail_with(IllFoundedTreeError):
        rank(DerivativeKind.I, Full())
    assert rank(DerivativeKind.IIE, Ray(1)) == Rank.of(0)
    assert str(rank(DerivativeKind.IIE, Full())) == "w_1"
    with assert_fail_with(UnsupportedQueryError):
        rank_ordinal(DerivativeKind.IIE, Full())


def test_rank_order():
    assert Rank.empty() < Rank.of(0) < Rank.of(OMEGA) < Rank.unbounded()
    assert Rank.of(3).at_least(Ordinal.of(3))
    assert not Rank.empty().at_least(Ordinal.of(0))
    assert Rank.of(OMEGA + 2).monus(OMEGA) == Rank.of(2)


@pytest.mark.parametrize("seed", range(30))
def test_leaf_rank_matches_naive_oracle(seed: int):
    tree = random_finite_tree(make_rng(seed), max_nodes=12, width=3, depth=5)
    assert rank(DerivativeKind.L, explicit(tree)) == Rank.of(naive_leaf_rank(tree))
    for k in range(naive_leaf_rank(tree) + 2):
        assert derive_finite_tree(DerivativeKind.L, tree, Ordinal.of(k)).nodes == frozenset(
            s for s in tree.nodes if naive_leaf_rank(tree.subtree(s)) >= k
        )


@pytest.mark.parametrize("kind", list(DerivativeKind))
@pytest.mark.parametrize("alpha", ["1", "2", "w"])
def test_derivatives_survive_falsification(kind: DerivativeKind, alpha: str):
    t = canonical_tree(parse_ordinal(alpha) + 1)
    assert falsify_derivative(kind, t, depth=2) == []


def test_iie_keeps_nodes_below_infinite_branching():
    t = join_omega(Constant(Ray(1)))
    assert member(derive_iie(t), ())
    assert not member(derive_iie(t), (0,))
    assert member(derive_i(t), (0, 1))
    for kind in DerivativeKind:
        assert falsify_derivative(kind, t, depth=3) == []
    (wrong,) = falsify_derivative_claim(DerivativeKind.IIE, t, (0,), True)
    assert wrong.node == (0,) and wrong.claimed
    (missed,) = falsify_derivative_claim(DerivativeKind.IIE, t, (), False)
    assert not missed.claimed


def test_iie_removes_rays():
    t = graft((0, 2), Ray(1))
    assert is_empty(derive_iie(t))
    assert member(derive_i(t), (0, 2, 1, 1))
    assert falsify_derivative(DerivativeKind.IIE, t, depth=4) == []
    assert falsify_derivative(DerivativeKind.I, t, depth=4) == []
    assert falsify_derivative_claim(DerivativeKind.IIE, t, (0,), True) != []
    two_rays = join_finite([((0,), Ray(0)), ((1,), Ray(1))])
    assert is_empty(derive_iie(two_rays))
    assert falsify_derivative_claim(DerivativeKind.IIE, two_rays, (), True) != []


@settings(deadline=None)
@given(ray_graft_trees())
def test_derivatives_of_ray_graft_trees_survive_falsification(t):
    for kind in DerivativeKind:
        assert falsify_derivative(kind, t, depth=3) == []
    assert is_empty(derive_iie(t)) == (rank(DerivativeKind.IIE, t) == Rank.of(0))


def test_limit_stage_is_an_intersection():
    t = canonical_tree(OMEGA + 1)
    n = limit_stage_check(DerivativeKind.L, t, OMEGA, depth=2, width=4)
    assert n is not None


@pytest.mark.parametrize("kind", list(DerivativeKind))
def test_rank_values_are_cached(kind: DerivativeKind):
    t = canonical_tree(parse_ordinal("w^2"))
    assert rank_value(kind, t) is rank_value(kind, t)
