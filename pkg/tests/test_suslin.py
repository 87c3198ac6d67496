import pytest
from helpers.exception import assert_fail_with
from helpers.objects import two_point_scheme

from borelkit.derive.ranks import is_well_founded
from borelkit.exceptions import ClassMismatchError, PreconditionError
from borelkit.ordinal import OMEGA, ZERO, Ordinal
from borelkit.random import make_rng
from borelkit.schemes import Base, Inter, Union, Universe, evaluate
from borelkit.suslin import (
    AdmissibleMap,
    brute_force_member,
    brute_force_r_set,
    closed_scheme,
    compile_regular,
    constant_scheme,
    delta,
    delta_xi,
    embed_check,
    enumerate_admissible,
    equivalent_trees,
    fa_sufficiency_check,
    find_embedding,
    is_antitone,
    lift,
    limit_ladder,
    pair_refine,
    pair_sequences,
    r_alpha,
    refines,
    remainder_check,
    rho,
    rho_inverse,
    rt_member,
    rt_set,
    s_tree,
    scheme_from_table,
    suslin_operation,
    unpair_sequence,
    xi,
)
from borelkit.suslin.admissible import embedding_inclusion_holds, exhaustive_member
from borelkit.suslin.remainder import remainder_agrees
from borelkit.suslin.engine import truncation_cross_check
from borelkit.trees import Empty, FiniteTree, Full, Point, canonical_tree, cl_tr, explicit, is_empty, member
from borelkit.verify.generators import random_finite_tree, random_scheme, random_set_expr, random_svec

SMALL = Universe.of_size(4)


def test_single_admissible_map_of_the_root():
    maps = list(enumerate_admissible(cl_tr([()]), 3))
    assert len(maps) == 1
    assert maps[0].mapping == {(): ()}


def test_admissible_maps_of_one_branch():
    maps = list(enumerate_admissible(cl_tr([(2,)]), 2))
    assert len(maps) == 4
    assert {phi((2,)) for phi in maps} == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert all(phi(()) == () for phi in maps)


def test_zero_branch_maps_to_the_empty_sequence():
    maps = list(enumerate_admissible(cl_tr([(0,)]), 5))
    assert [phi.mapping for phi in maps] == [{(): (), (0,): ()}]


def test_admissible_map_validation():
    with assert_fail_with(PreconditionError, "should be 2 and not 1"):
        AdmissibleMap(cl_tr([(2,)]), {(): (), (2,): (0,)})
    with assert_fail_with(PreconditionError, "does not extend"):
        AdmissibleMap(cl_tr([(1, 1)]), {(): (), (1,): (0,), (1, 1): (1, 0)})
    with assert_fail_with(PreconditionError, "exactly on the nodes"):
        AdmissibleMap(cl_tr([(1,)]), {(): ()})


def test_point_tree_gives_the_value_at_h():
    c = two_point_scheme()
    assert rt_member(c, Point(), "a")
    assert rt_member(c, Point(), "a", h=(0,))
    assert not rt_member(c, Point(), "a", h=(1,))


def test_two_point_scheme_over_the_first_canonical_tree():
    c = two_point_scheme()
    assert rt_member(c, canonical_tree(1), "a")
    assert rt_member(c, canonical_tree(1), "b")
    assert r_alpha(c, 2) == {"a", "b"}


def test_point_outside_every_branch():
    c = two_point_scheme(extra=True)
    assert rt_member(c, Point(), "c")
    assert not rt_member(c, canonical_tree(1), "c")
    assert r_alpha(c, 0) == {"a", "b", "c"}
    assert r_alpha(c, 2) == {"a", "b"}


def test_values_outside_the_domain():
    c = scheme_from_table(SMALL, {(): {0, 1, 2}, (0,): {0, 1}, (0, 0): {0}})
    assert c.value((0, 0, 5, 1)) == {0}
    # leaving the domain through an internal node gives the empty set
    assert c.value((1,)) == set()
    assert c.value((0, 3)) == set()
    assert c.value((0, 3, 0)) == set()
    # with (0, 3, 0, ...) keeping the value of (0), the point 1 would lie in A(C)
    assert suslin_operation(c) == {0}
    assert r_alpha(c, 2) == {0}


def test_unknown_point():
    with assert_fail_with(PreconditionError, "not an element of the universe"):
        rt_member(two_point_scheme(), Point(), "z")


def test_suslin_operation():
    assert suslin_operation(constant_scheme(SMALL, {0, 1})) == {0, 1}
    assert suslin_operation(two_point_scheme()) == {"a", "b"}
    assert suslin_operation(two_point_scheme(extra=True)) == {"a", "b"}


def test_scheme_should_be_monotone():
    with assert_fail_with(PreconditionError, "not monotone"):
        scheme_from_table(SMALL, {(): {0}, (0,): {0, 1}})


@pytest.mark.parametrize("seed", range(40))
def test_recursion_agrees_with_admissible_maps(seed: int):
    rng = make_rng(seed)
    c = random_scheme(rng, SMALL, depth=2, width=3)
    tree = random_finite_tree(rng, 5, 3, 2)
    h = (0,) if (0,) in c.domain and rng.random() < 0.5 else ()
    for x in SMALL:
        assert rt_member(c, explicit(tree), x, h) == brute_force_member(c, tree, x, h)
    assert rt_set(c, explicit(tree), h) == brute_force_r_set(c, tree, h)


@pytest.mark.parametrize("seed", range(10))
def test_branchwise_search_agrees_with_whole_map_search(seed: int):
    rng = make_rng(seed)
    c = random_scheme(rng, SMALL, depth=2, width=2, max_nodes=4)
    tree = random_finite_tree(rng, 3, 2, 2)
    for x in SMALL:
        assert exhaustive_member(c, tree, x) == brute_force_member(c, tree, x)


@pytest.mark.parametrize("seed", range(20))
def test_full_tree_gives_the_suslin_operation(seed: int):
    c = random_scheme(make_rng(seed), SMALL, depth=3, width=3)
    assert rt_set(c, Full()) == suslin_operation(c)


@pytest.mark.parametrize("seed", range(20))
def test_r_alpha_is_antitone(seed: int):
    c = random_scheme(make_rng(seed), SMALL, depth=3, width=2)
    assert is_antitone(c, [0, 1, 2, 3, 4])


@pytest.mark.parametrize("seed", range(10))
def test_truncation_cross_check(seed: int):
    c = random_scheme(make_rng(seed), SMALL, depth=2, width=2)
    assert truncation_cross_check(c, canonical_tree(2), depth=4)


def test_coding_example():
    a, b, c, d, e, f, g, h, i = range(1, 10)
    svec = ((a, b), (c, d, e), (f, g, h, i))
    assert delta(svec, 0) == ()
    assert xi(svec, 0) == (a, c, f)
    assert delta(svec, 2) == (b, e)
    assert xi(svec, 2) == (h,)
    assert delta(svec, 3) == (b, e, i)
    assert xi(svec, 3) == ()
    code, deltas, xis = delta_xi(svec)
    assert code == rho(svec)
    assert all(len(dk) + len(xk) == len(svec) for dk, xk in zip(deltas, xis))


def test_coding_rejects_bad_lengths():
    with assert_fail_with(PreconditionError, "should have length 2"):
        rho(((0,),))
    with assert_fail_with(PreconditionError, "only defined"):
        delta(((0, 1),), 2)


@pytest.mark.parametrize("seed", range(20))
def test_rho_round_trip(seed: int):
    rng = make_rng(seed)
    svec = random_svec(rng, int(rng.integers(0, 6)), 5)
    assert rho_inverse(rho(svec)) == svec
    s, t = (1, 4, 0), (2, 2, 7)
    assert unpair_sequence(pair_sequences(s, t)) == (s, t)


def test_pair_sequences_needs_equal_lengths():
    with assert_fail_with(PreconditionError, "equal length"):
        pair_sequences((0,), ())


def test_embed_check_examples():
    t = cl_tr([(1,), (0, 2)])
    identity = {u: u for u in t.nodes}
    assert embed_check(identity, t, t)

    small = cl_tr([(1,)])
    large = cl_tr([(1,), (2,)])
    inclusion = {u: u for u in small.nodes}
    assert embed_check(inclusion, small, large)
    for c in [two_point_scheme(), two_point_scheme(extra=True)]:
        assert rt_set(c, explicit(large)) <= rt_set(c, explicit(small))
        assert embedding_inclusion_holds(c, inclusion, small, large)

    shrinking = {(): (), (2,): (1,)}
    assert not embed_check(shrinking, cl_tr([(2,)]), small)


def test_embed_check_needs_a_total_map():
    with assert_fail_with(PreconditionError, "defined on every node"):
        embed_check({(): ()}, cl_tr([(1,)]), cl_tr([(1,)]))
    with assert_fail_with(PreconditionError, "outside of s"):
        embed_check({(): (), (1,): (3,)}, cl_tr([(1,)]), cl_tr([(1,)]))


def test_find_embedding():
    mapping = find_embedding(cl_tr([(2,), (0, 1)]), canonical_tree(2), 4)
    assert mapping is not None
    assert find_embedding(cl_tr([(0, 0)]), Point(), 3) is None
    assert find_embedding(FiniteTree(frozenset()), Point(), 3) == {}


def test_s_tree_of_a_branch_point():
    c = two_point_scheme()
    t = s_tree(c, None, "a")
    assert member(t, (0,))
    assert member(t, (0, 5, 5))
    assert not member(t, (1,))
    assert not is_well_founded(t)


def test_s_tree_of_a_point_in_no_value():
    c = scheme_from_table(Universe(frozenset("abz")), {(): {"a", "b"}, (0,): {"a"}})
    assert is_empty(s_tree(c, None, "z"))
    assert s_tree(two_point_scheme(extra=True), None, "c") == Point()
    assert is_well_founded(s_tree(two_point_scheme(extra=True), None, "c"))
    assert s_tree(c, None, "z") == Empty()


def test_s_tree_uses_the_closure():
    c = two_point_scheme(extra=True)
    t = s_tree(c, lambda v: v | {"c"} if v else v, "c")
    assert member(t, (1, 3))
    assert not is_well_founded(t)


def test_fa_sufficiency():
    c = two_point_scheme(extra=True)
    assert fa_sufficiency_check(c, None, {"a", "b"}, 2).passed
    report = fa_sufficiency_check(c, None, {"a", "b"}, 0)
    assert not report.passed
    assert [v.point for v in report.failures] == ["c"]


def test_remainder_of_the_extra_point():
    c = two_point_scheme(extra=True)
    assert remainder_check(c, None, 0) == {"c"}
    assert remainder_check(c, None, 1) == set()
    assert remainder_check(c, None, 2) == set()
    for alpha in range(4):
        assert remainder_agrees(c, None, alpha)


def test_remainder_with_a_closure():
    # every nonempty value closes up to contain c, so c lies in A(cl C) and nothing is left over
    c = two_point_scheme(extra=True)
    closure = lambda v: v | {"c"} if v else v  # noqa: E731
    assert remainder_check(c, closure, 2) == set()
    with assert_fail_with(PreconditionError, "only allowed for odd ordinals"):
        remainder_check(c, None, 2, n=1)


def test_fa_sufficiency_needs_the_suslin_set():
    with assert_fail_with(PreconditionError, "should equal x"):
        fa_sufficiency_check(two_point_scheme(extra=True), None, {"a"}, 2)


def adds_one_above_zero(v):
    return v | {1} if 0 in v else v


def three_level_scheme():
    """3 sits in C((0)) but in no leaf value; the closure puts 1 into the leaf (0, 0)."""
    return scheme_from_table(SMALL, {(): {0, 1, 2, 3}, (0,): {0, 1, 3}, (1,): {2}, (0, 0): {0}})


@pytest.mark.parametrize(
    "alpha, expected",
    [(Ordinal.of(1), {3}), (Ordinal.of(2), set()), (Ordinal.of(3), set()), (OMEGA, set())],
    ids=str,
)
def test_remainder_under_a_closure(alpha: Ordinal, expected):
    c = three_level_scheme()
    assert suslin_operation(closed_scheme(c, adds_one_above_zero)) == {0, 1, 2}
    assert remainder_check(c, adds_one_above_zero, alpha) == expected
    assert remainder_agrees(c, adds_one_above_zero, alpha)
    # without the closure 1 is left over as well
    assert remainder_check(c, None, alpha) == (expected | {1} if expected else set())
    assert remainder_agrees(c, None, alpha)


def test_remainder_at_odd_classes_counts_node_lengths():
    c = three_level_scheme()
    assert remainder_check(c, adds_one_above_zero, 1, n=1) == {3}
    assert remainder_check(c, adds_one_above_zero, 1, n=2) == set()
    assert remainder_agrees(c, adds_one_above_zero, 1, n=2)


def test_fa_sufficiency_through_a_height_bound():
    c = three_level_scheme()
    report = fa_sufficiency_check(c, adds_one_above_zero, {0, 1, 2}, 1)
    assert report.passed
    assert report.witness == 2
    assert report.case == "derivatives within omega^<=1"
    assert [(v.point, v.height) for v in report.verdicts] == [(3, 1)]
    assert r_alpha(closed_scheme(c, adds_one_above_zero), 1, report.witness) == {0, 1, 2}

    assert fa_sufficiency_check(c, adds_one_above_zero, {0, 1, 2}, 2).case == "empty derivatives"
    assert fa_sufficiency_check(c, adds_one_above_zero, {0, 1, 2}, 3).witness is None
    assert not fa_sufficiency_check(c, adds_one_above_zero, {0, 1, 2}, 0).passed


def test_lift():
    assert lift(Base({0}), 0) == Base({0})
    assert lift(Base({0}), 2) == Inter((Union((Base({0}),)),))
    with assert_fail_with(ClassMismatchError):
        lift(Inter((Base({0}),)), 1)


def test_compile_regular_base():
    c = compile_regular(Base({0, 1}), 0, width=2, universe=SMALL)
    assert r_alpha(c, 0) == {0, 1}


def test_compile_regular_needs_a_universe():
    with assert_fail_with(PreconditionError, "cannot be inferred"):
        compile_regular(Base(frozenset()), 0, width=2)
    with assert_fail_with(ClassMismatchError):
        compile_regular(Inter((Base({0}),)), 1, width=2, universe=SMALL)


@pytest.mark.parametrize("alpha", [0, 1, 2, 3, 4])
@pytest.mark.parametrize("seed", range(5))
def test_regular_representation(alpha: int, seed: int):
    rng = make_rng(seed, alpha)
    e = random_set_expr(rng, SMALL, alpha, 2)
    c = compile_regular(e, alpha, width=2, universe=SMALL)
    assert r_alpha(c, alpha) == evaluate(e)


def test_limit_ladder_is_cofinal_and_bounded_below():
    assert [limit_ladder(OMEGA, 0, m) for m in range(4)] == [0, 1, 2, 3]
    assert [limit_ladder(OMEGA, 2, m) for m in range(4)] == [2, 2, 2, 3]
    assert all(limit_ladder(Ordinal.omega_power(1, 2), 1, m) < Ordinal.omega_power(1, 2) for m in range(10))


def test_compile_regular_at_a_limit_reindexes_along_the_ladder():
    items = (Base({0, 1}), Base({1, 2}))
    e = Inter((Union(items),))
    c = compile_regular(e, OMEGA, width=2, universe=SMALL)
    assert r_alpha(c, OMEGA) == evaluate(e) == {0, 1, 2}

    # words of length 1 pick a union item, compiled at alpha_1 = 1
    columns = {(j,): compile_regular(item, 1, width=2, universe=SMALL) for j, item in enumerate(items)}

    def column(u):
        if u in columns:
            return columns[u]
        return constant_scheme(SMALL, frozenset() if len(u) == 1 else SMALL.elements)

    for node in c.domain.nodes:
        svec = rho_inverse(node)
        expected = frozenset.intersection(*(column(delta(svec, k)).value(xi(svec, k)) for k in range(len(svec) + 1)))
        assert c.value(node) == expected, node
    # the class 1 columns carry one level more than the constant columns used at class 2
    assert c.depth == compile_regular(e, 2, width=2, universe=SMALL).depth + 1


def test_compile_regular_above_a_limit_prefixes_the_limit_scheme():
    e = Inter((Union((Base({0, 1}), Base({1, 2}))),))
    c = compile_regular(e, OMEGA + 1, width=2, universe=SMALL)
    inner = compile_regular(e, OMEGA, width=2, universe=SMALL)
    assert c.value(()) == evaluate(e)
    assert c.domain.children(()) == [0]
    assert set(c.domain.nodes) == {()} | {(0,) + t for t in inner.domain.nodes}
    for t in inner.domain.nodes:
        assert c.value((0,) + t) == evaluate(e) & inner.value(t)
    assert r_alpha(c, OMEGA + 1) == evaluate(e)


def test_pair_refine_intersects_values():
    c = two_point_scheme()
    r = scheme_from_table(c.universe, {(): {"a", "b"}, (0,): {"a", "b"}, (1,): {"b"}})
    p = pair_refine(c, r)
    assert p.universe == c.universe
    assert p.value(pair_sequences((0,), (0,))) == {"a"}
    assert p.value(pair_sequences((0,), (1,))) == set()
    assert suslin_operation(p) <= suslin_operation(c) & suslin_operation(r)
    assert refines(p, c, lambda u: unpair_sequence(u)[0])
    assert refines(p, r, lambda u: unpair_sequence(u)[1])


def test_limit_canonical_tree_is_equivalent_to_its_join():
    assert equivalent_trees(OMEGA, lambda m: Ordinal.of(m), depth=3, width=2)
    assert not equivalent_trees(OMEGA, lambda m: ZERO, depth=3, width=2)
