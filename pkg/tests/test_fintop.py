import pytest
from helpers.exception import assert_fail_with
from helpers.objects import sierpinski

from borelkit.broom import extend_broom, standard_broom
from borelkit.exceptions import PreconditionError
from borelkit.fintop import (
    ClosureOperator,
    FinSpace,
    amalgamate,
    check_axioms_a,
    close_under_operations,
    closed_copy,
    discrete,
    from_preorder,
    gamma_handles,
    generate_topology,
    handle_partition_check,
    idempotence_holds,
    indiscrete,
    is_homeomorphism,
    stretch_check,
    trivial_extensions,
    v_algebra_holds,
    w_laws,
    w_operator,
    zoom_space,
)
from borelkit.ordinal import OMEGA, Ordinal
from borelkit.random import make_rng
from borelkit.schemes import Universe
from borelkit.verify.generators import (
    enumerate_spaces,
    random_amalgamation_inputs,
    random_space,
    random_subset,
    random_zoom_parts,
)


def test_space_validation():
    with assert_fail_with(PreconditionError, "empty set and the whole space"):
        FinSpace(frozenset({0}), frozenset({frozenset({0})}))
    with assert_fail_with(PreconditionError, "closed under unions"):
        FinSpace(frozenset({0, 1, 2}), frozenset({frozenset(), frozenset({0, 1, 2}), frozenset({0}), frozenset({1})}))


def test_sierpinski_space():
    y = sierpinski()
    assert y.opens == {frozenset(), frozenset({"i"}), frozenset({"i", "p"})}
    assert y.isolated_points() == {"i"}
    assert y.closure({"i"}) == {"i", "p"}
    assert y.is_closed({"p"})
    assert y.interior({"p"}) == set()


@pytest.mark.parametrize("size", range(4))
def test_generated_topologies_match_the_closure_oracle(size: int):
    for x in enumerate_spaces(size):
        subbasis = [x.neighbourhood(p) for p in x.points]
        assert generate_topology(x.points, subbasis) == x
        assert close_under_operations(x.points, subbasis) == x.opens


def test_number_of_topologies_on_three_points():
    assert sum(1 for _ in enumerate_spaces(3)) == 29


def test_closure_operator():
    y = sierpinski()
    op = y.closure_operator()
    assert op({"i"}) == {"i", "p"}
    assert op.to_space() == y
    with assert_fail_with(PreconditionError, "not a closure operator"):
        ClosureOperator(frozenset({0, 1}), lambda s: frozenset())


def test_zoom_into_the_sierpinski_space():
    zoom = zoom_space(sierpinski(), {"i": discrete({0, 1})})
    assert zoom.space.points == {("p",), ("i", 0), ("i", 1)}
    assert zoom.space.neighbourhood(("p",)) == zoom.space.points
    assert zoom.space.is_open({("i", 0)})
    assert zoom.space.is_open(zoom.part("i"))
    assert not zoom.space.is_closed(zoom.part("i"))
    assert all(zoom.postconditions().values())
    assert v_algebra_holds(zoom)
    assert zoom.basic_set({"i"}) == zoom.part("i")


def test_zoom_of_a_discrete_space_by_points():
    y = discrete({0, 1})
    zoom = zoom_space(y, {0: discrete({"q"})})
    assert zoom.space.points == {(1,), (0, "q")}
    assert is_homeomorphism(zoom.quotient, zoom.space, y)


def test_zoom_preconditions():
    with assert_fail_with(PreconditionError, "not an isolated point"):
        zoom_space(sierpinski(), {"p": discrete({0})})
    with assert_fail_with(PreconditionError, "should be nonempty"):
        zoom_space(sierpinski(), {"i": FinSpace(frozenset(), frozenset({frozenset()}))})
    zoom = zoom_space(sierpinski(), {})
    with assert_fail_with(PreconditionError, "is not open in the base space"):
        zoom.basic_set({"p"})


def test_closed_copy():
    zoom = zoom_space(sierpinski(), {"i": discrete({0, 1})})
    copy = closed_copy(zoom, {"i": 0})
    assert copy.points == {("p",), ("i", 0)}
    assert copy.homeomorphic
    assert copy.closed
    assert copy.section_is_identity
    with assert_fail_with(PreconditionError, "outside of X_"):
        closed_copy(zoom, {"i": 7})
    with assert_fail_with(PreconditionError, "exactly one point"):
        closed_copy(zoom, {})


@pytest.mark.parametrize("seed", range(10))
def test_random_zooms(seed: int):
    rng = make_rng(seed)
    y = random_space(rng, 4)
    zoom = zoom_space(y, random_zoom_parts(rng, y))
    assert all(zoom.postconditions().values())
    assert v_algebra_holds(zoom)


def test_w_operator_on_a_dense_point():
    q = sierpinski()
    assert w_operator(q, {"i"}, {"i"}) == {"i", "p"}
    assert w_operator(q, {"i"}, set()) == set()
    assert all(w_laws(q, {"i"}).values())


def test_w_operator_needs_an_open_trace():
    with assert_fail_with(PreconditionError, "is not open in the subspace"):
        w_operator(sierpinski(), {"i", "p"}, {"p"})
    with assert_fail_with(PreconditionError, "is not open in the subspace"):
        w_operator(sierpinski(), {"i"}, {"p"})


@pytest.mark.parametrize("seed", range(10))
def test_w_laws_on_random_spaces(seed: int):
    rng = make_rng(seed)
    q = random_space(rng, 5)
    p = random_subset(rng, Universe(q.points))
    assert all(w_laws(q, p).values())


def test_axiom_a1_fails_on_an_open_point():
    report = check_axioms_a(sierpinski(), [{"i"}])
    assert not report.a1
    assert report.not_clopen == [{"i"}]
    assert not report.passed


def test_axiom_a4_with_bounded_exceptions():
    x = discrete({0, 1, 2})
    family = [{0}, {1}]
    assert check_axioms_a(x, family).passed
    assert "vacuous" in check_axioms_a(x, family).notes["A4"]
    report = check_axioms_a(x, family, max_exceptions=0)
    assert not report.a4
    assert report.witness_cover == [{2}]
    assert check_axioms_a(x, family, max_exceptions=2).a4


def test_axioms_need_subsets_of_the_space():
    with assert_fail_with(PreconditionError, "family member 0"):
        check_axioms_a(discrete({0}), [{5}])


def test_amalgamation_with_trivial_extensions():
    x = discrete({0, 1})
    family = [{0}]
    amalgamation = amalgamate(x, family, trivial_extensions(x, family))
    assert amalgamation.space == x
    assert idempotence_holds(x, family)


def test_amalgamation_with_a_new_point():
    x = discrete({0, 1})
    extension = from_preorder({0, "e"}, [("e", 0)])
    amalgamation = amalgamate(x, [{0}], {0: extension})
    space = amalgamation.space
    assert space.points == {0, 1, "e"}
    assert space.neighbourhood("e") == {"e", 0}
    assert space.is_clopen({0, "e"})
    assert space.subspace({0, 1}) == x
    assert all(amalgamation.postconditions().values())


def test_amalgamation_rejects_bad_extensions():
    x = discrete({0, 1, 2})
    with assert_fail_with(PreconditionError, "meets X"):
        amalgamate(x, [{0}], {0: discrete({0, 2})})
    with assert_fail_with(PreconditionError, "exactly one extension per family member"):
        amalgamate(x, [{0}], {})
    with assert_fail_with(PreconditionError, "not dense"):
        amalgamate(x, [{0}], {0: discrete({0, "e"})})
    family = [{0, 1}, {1, 2}]
    extensions = {0: x.subspace({0, 1}), 1: from_preorder({1, 2, "e"}, [("e", 1)])}
    with assert_fail_with(PreconditionError, "is not clopen in their extensions"):
        amalgamate(x, family, extensions)
    with assert_fail_with(PreconditionError, "(A1) fails"):
        amalgamate(sierpinski(), [{"i"}], trivial_extensions(sierpinski(), [{"i"}]))


def test_amalgamation_of_an_indiscrete_member():
    x = indiscrete({0, 1})
    assert idempotence_holds(x, [{0, 1}])


@pytest.mark.parametrize("seed", range(10))
def test_random_amalgamations(seed: int):
    x, family, extensions = random_amalgamation_inputs(make_rng(seed), 5)
    amalgamation = amalgamate(x, family, extensions)
    assert all(amalgamation.postconditions().values())
    assert idempotence_holds(x, family)


def test_gamma_handles_of_a_fork():
    a = extend_broom(standard_broom(Ordinal.of(2)))
    assert gamma_handles(a, Ordinal.of(2), 3) == {(0,), (1,), (2,)}
    assert gamma_handles(a, Ordinal.of(4), 3) == {()}
    # cl_Tr(B) is walked on entries below the default width 3
    assert gamma_handles(a, 2) == {(0,), (1,), (2,)}
    assert handle_partition_check(a, Ordinal.of(2), 3).passed


def test_gamma_handles_below_omega():
    a = extend_broom(standard_broom(OMEGA))
    report = handle_partition_check(a, OMEGA, 3)
    assert report.handles == {(0,), (1,), (2,)}
    assert report.incomparable
    assert report.passed


def test_gamma_should_be_at_least_two():
    with assert_fail_with(PreconditionError, "at least 2"):
        gamma_handles(extend_broom(standard_broom(Ordinal.of(2))), Ordinal.of(1), 3)


def test_stretch_check():
    x = sierpinski()
    amalgamation = amalgamate(x, [{"i", "p"}], trivial_extensions(x, [{"i", "p"}]))
    identity = stretch_check(amalgamation, {"i": "i", "p": "p"}, x)
    assert identity.continuous and identity.agree
    swap = stretch_check(amalgamation, {"i": "p", "p": "i"}, x)
    assert not swap.continuous
    assert swap.agree
