"""Small named instances used across the tests."""
from hypothesis import strategies as st

from borelkit.broom import Fork, Trivial, UniformTail
from borelkit.fintop import from_preorder
from borelkit.ordinal import Ordinal
from borelkit.schemes import Universe
from borelkit.suslin import scheme_from_table
from borelkit.trees import Constant, Point, Ray, graft, join_finite, join_omega


def ordinals(max_exponent: int = 3, max_coefficient: int = 4):
    """Ordinals below omega^(max_exponent + 1)."""
    return st.dictionaries(
        st.integers(0, max_exponent), st.integers(1, max_coefficient), max_size=max_exponent + 1
    ).map(lambda terms: Ordinal(tuple(sorted(terms.items(), reverse=True))))


def two_point_scheme(extra=False):
    """C(∅) = {a, b} (plus c), C((0)) = {a}, C((1)) = {b}."""
    root = {"a", "b", "c"} if extra else {"a", "b"}
    return scheme_from_table(Universe(frozenset(root)), {(): root, (0,): {"a"}, (1,): {"b"}})


def fork_omega() -> Fork:
    """{ (n) : n ∈ ω }, the fork of trivial brooms over the heads (n)."""
    return Fork(UniformTail((), 0, (), Trivial()))


def sierpinski():
    """Two points, ``i`` isolated and ``p`` whose only neighbourhood is the whole space."""
    return from_preorder(["i", "p"], [("p", "i")])


def ray_graft_trees(max_entry: int = 3):
    """Trees built from points and rays by grafting, finite joins and omega-joins of one constant subtree."""
    entries = st.integers(0, max_entry)
    leaves = st.one_of(st.just(Point()), entries.map(Ray))
    return st.recursive(
        leaves,
        lambda inner: st.one_of(
            st.builds(graft, st.lists(entries, min_size=1, max_size=2).map(tuple), inner),
            st.lists(inner, min_size=1, max_size=3).map(
                lambda subs: join_finite([((n,), sub) for n, sub in enumerate(subs)])
            ),
            inner.map(lambda sub: join_omega(Constant(sub))),
        ),
        max_leaves=5,
    )
