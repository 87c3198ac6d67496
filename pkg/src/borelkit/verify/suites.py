"""Property suites: one generator of random inputs and one check per suite.

A check takes the generated inputs as keyword arguments and returns None when the property holds, otherwise a
message. Inputs are kept JSON-encodable so that a failing case can be written out and checked again.
"""
from dataclasses import dataclass, replace
from typing import Any, Callable, Dict, Iterator, Optional

import numpy as np

from borelkit.broom import (
    ConeStrategy,
    InfBroomExpr,
    almost_disjoint_check,
    classify_broom,
    diie_matches_closure,
    extend_broom,
    handle,
    hierarchy_check,
    max_constant,
    rank_lemma_check,
    tilde_law_holds,
)
from borelkit.config.config import BoundsArgs
from borelkit.config.utils_config import DerivativeKind, LimitEnumeration, Suite
from borelkit.derive.derivatives import iterate
from borelkit.derive.oracle import FALSIFY_WIDTH, falsify_derivative
from borelkit.derive.ranks import rank_ordinal, rank_value
from borelkit.fintop import (
    ClosureOperator,
    amalgamate,
    check_axioms_a,
    close_under_operations,
    closed_copy,
    generate_topology as generate_space_topology,
    idempotence_holds,
    v_algebra_holds,
    w_laws,
    zoom_space,
)
from borelkit.fintop.handles import handle_partition_check
from borelkit.fintop.space import FinSpace, sorted_points
from borelkit.ordinal import (
    OMEGA,
    Ordinal,
    enumerate_limit,
    enumeration_index,
    format_ordinal,
    left_subtract,
    parse_ordinal,
)
from borelkit.random import make_rng
from borelkit.schemes.leaf import compile_simple, eval_scheme, restrict_scheme, shrink_scheme
from borelkit.schemes.setexpr import Universe, evaluate
from borelkit.suslin.admissible import brute_force_member, embedding_inclusion_holds, find_embedding
from borelkit.suslin.coding import check_svec, delta, extends, rho, rho_inverse, xi
from borelkit.suslin.compile import compile_regular
from borelkit.suslin.engine import is_antitone, r_alpha, rt_member
from borelkit.trees.canonical import canonical_tree
from borelkit.trees.expr import (
    explicit,
    graft,
    is_empty,
    materialize,
    member,
    node_count,
    same_truncation,
    subtree_at,
    truncate,
)
from borelkit.trees.finite import cl_tr
from borelkit.trees.seq import is_prefix
from borelkit.verify import generators as gen

Inputs = Dict[str, Any]

CANONICAL_ORDINALS = tuple(
    parse_ordinal(text) for text in ("0", "1", "2", "3", "5", "w", "w + 1", "w*2", "w^2", "w^2 + w + 3")
)
BROOM_ORDINALS = tuple(Ordinal.of(k) for k in range(7)) + (OMEGA, OMEGA + 2)
TILDE_ORDINALS = tuple(Ordinal.of(k) for k in range(4)) + (OMEGA, OMEGA + 1)
REGULAR_CLASSES = range(5)
TOPOLOGY_SIZES = (6, 8)


@dataclass(frozen=True)
class SuiteSpec:
    generate: Callable[[np.random.Generator, BoundsArgs], Inputs]
    check: Callable[..., Optional[str]]
    description: str
    # every input of an exhaustive sweep, given the seed and the number of points
    exhaustive: Optional[Callable[[int, int], Iterator[Inputs]]] = None


def _pick(rng: np.random.Generator, options):
    return options[int(rng.integers(0, len(options)))]


def _universe(rng: np.random.Generator, bounds: BoundsArgs, cap: Optional[int] = None) -> Universe:
    top = bounds.universe if cap is None else min(bounds.universe, cap)
    return Universe.of_size(int(rng.integers(1, top + 1)))


# Ordinals


def generate_ordinal(rng, bounds) -> Inputs:
    return dict(
        a=gen.random_ordinal(rng),
        b=gen.random_ordinal(rng),
        c=gen.random_ordinal(rng),
        lam=gen.random_limit(rng),
        n=int(rng.integers(0, 64)),
    )


def check_ordinal(a: Ordinal, b: Ordinal, c: Ordinal, lam: Ordinal, n: int) -> Optional[str]:
    if parse_ordinal(format_ordinal(a)) != a:
        return f"{format_ordinal(a)} does not parse back"
    limit, k, i = a.decompose()
    if limit + 2 * k + i != a or a.parity != i or a.alpha_prime() != limit + k:
        return f"decomposition {limit} + 2*{k} + {i} of {a}"
    if (a + b) + c != a + (b + c):
        return f"addition is not associative on {a}, {b}, {c}"
    low, high = min(a, b), max(a, b)
    if low + left_subtract(low, high) != high:
        return f"left subtraction of {low} from {high}"
    for scheme in LimitEnumeration:
        values = [enumerate_limit(lam, j, scheme) for j in range(n + 1)]
        if len(set(values)) != len(values) or not all(v < lam for v in values):
            return f"pi_{lam} is not injective below {lam} on the first {n + 1} indices ({scheme.name})"
        if enumeration_index(lam, values[-1], scheme) != n:
            return f"enumeration_index does not invert pi_{lam} at {n} ({scheme.name})"
    return None


# Trees


def generate_trees(rng, bounds) -> Inputs:
    return dict(
        tree=gen.random_finite_tree(rng, 3 * bounds.width, bounds.width, bounds.depth),
        head=gen.random_seq(rng, int(rng.integers(0, 3)), bounds.width),
        t=gen.random_tree_expr(rng, 3, bounds.width),
        depth=bounds.depth,
        width=bounds.width + 1,
    )


def check_trees(tree, head, t, depth: int, width: int) -> Optional[str]:
    head = tuple(head)
    e = explicit(tree)
    probes = set(tree.nodes) | {s + (n,) for s in tree.nodes for n in range(tree.max_entry() + 2)}
    wrong = [s for s in probes if member(e, s) != (s in tree)]
    if wrong:
        return f"membership disagrees with the node set at {sorted(wrong)[:3]}"
    if materialize(e) != tree or node_count(e) != len(tree):
        return "materialize does not give back an explicit tree"
    if truncate(e, tree.height(), tree.max_entry() + 1) != tree:
        return "a large enough truncation of an explicit tree is the tree"
    if cl_tr(tree.leaves()) != tree:
        return "the closure of the leaves is the tree"
    if not same_truncation(subtree_at(graft(head, t), head), t, depth, width):
        return f"the subtree at {head} of a graft is the grafted tree"
    return None


# Ranks of canonical trees


def generate_canonical_rank(rng, bounds) -> Inputs:
    alpha = _pick(rng, CANONICAL_ORDINALS) if rng.random() < 0.7 else gen.random_ordinal(rng)
    return dict(alpha=alpha)


def check_canonical_rank(alpha: Ordinal) -> Optional[str]:
    for scheme in LimitEnumeration:
        tree = canonical_tree(alpha, scheme)
        for kind in DerivativeKind:
            found = rank_ordinal(kind, tree)
            if found != alpha:
                return f"r_{kind.name.lower()}(T_{alpha}) = {found} with {scheme.name} enumeration"
    return None


# Derivatives


def generate_derive(rng, bounds) -> Inputs:
    alpha = gen.random_below(rng, OMEGA + 2) if rng.random() < 0.5 else Ordinal.of(int(rng.integers(0, 4)))
    return dict(t=gen.random_tree_expr(rng, 3, bounds.width), alpha=alpha, depth=bounds.depth, width=bounds.width + 1)


def check_derive(t, alpha: Ordinal, depth: int, width: int) -> Optional[str]:
    layers = [truncate(t, depth, width).nodes] + [
        truncate(iterate(kind, t, 1), depth, width).nodes for kind in DerivativeKind
    ]
    if not all(inner <= outer for outer, inner in zip(layers, layers[1:])):
        return "first derivatives are not nested as D_iie ⊆ D_i ⊆ D_l ⊆ T"
    ranks = {kind: rank_value(kind, t) for kind in DerivativeKind}
    ordered = list(ranks.values())
    if any(inner > outer for outer, inner in zip(ordered, ordered[1:])):
        return f"ranks are not monotone: {[str(r) for r in ordered]}"
    for kind in DerivativeKind:
        derived = iterate(kind, t, alpha)
        if (not is_empty(derived)) != ranks[kind].at_least(alpha):
            return f"D_{kind.name.lower()}^{alpha} should be nonempty exactly when the rank reaches {alpha}"
        once_more = iterate(kind, iterate(kind, t, 1), alpha)
        if not same_truncation(once_more, iterate(kind, t, Ordinal.of(1) + alpha), depth, width):
            return f"D^{alpha}(D(T)) differs from D^(1 + {alpha})(T) for D_{kind.name.lower()}"
    for kind in DerivativeKind:
        found = falsify_derivative(kind, t, depth, width=max(FALSIFY_WIDTH, 2 * width + 2))
        if found:
            return f"D_{kind.name.lower()} is contradicted at {found[0].node}: {found[0].reason}"
    return None


# Leaf-schemes


def generate_leaf_scheme(rng, bounds) -> Inputs:
    universe = _universe(rng, bounds)
    alpha = Ordinal.of(int(rng.integers(0, 5))) if rng.random() < 0.8 else OMEGA + int(rng.integers(0, 2))
    top = alpha.to_int() if alpha.is_finite else 4
    return dict(
        e=gen.random_set_expr(rng, universe, int(rng.integers(0, top + 1)), bounds.width),
        alpha=alpha,
        width=bounds.width,
        extra=gen.random_subset(rng, universe),
    )


def check_leaf_scheme(e, alpha: Ordinal, width: int, extra) -> Optional[str]:
    x = evaluate(e)
    h = compile_simple(e, alpha, width)
    if eval_scheme(h) != x:
        return f"the compiled scheme evaluates to {sorted(eval_scheme(h))} instead of {sorted(x)}"
    h2 = restrict_scheme(h, x | frozenset(extra))
    if not shrink_scheme(h, x, h2):
        return "the restricted scheme should shrink the compiled one"
    if eval_scheme(h2) != x:
        return f"a shrunk representation evaluates to {sorted(eval_scheme(h2))} instead of {sorted(x)}"
    return None


# R_T against brute force


def generate_rt_oracle(rng, bounds) -> Inputs:
    universe = _universe(rng, bounds, cap=8)
    return dict(
        c=gen.random_scheme(rng, universe, depth=3, width=3),
        tree=gen.random_finite_tree(rng, 5, 3, 3),
        other=gen.random_finite_tree(rng, 5, 3, 3),
        h=gen.random_seq(rng, int(rng.integers(0, 2)), 3),
    )


def check_rt_oracle(c, tree, other, h) -> Optional[str]:
    h = tuple(h)
    t = explicit(tree)
    for x in c.universe:
        if rt_member(c, t, x, h) != brute_force_member(c, tree, x, h):
            return f"R_T and the admissible-map search disagree on {x!r}"
    f = find_embedding(tree, explicit(other), 2 * other.max_entry() + 2)
    if f is not None and not embedding_inclusion_holds(c, f, tree, other):
        return "an embedding of the trees does not give the inclusion of their R_T sets"
    return None


# Regular representations


def generate_regular(rng, bounds) -> Inputs:
    universe = _universe(rng, bounds)
    alpha = _pick(rng, REGULAR_CLASSES)
    width = min(bounds.width, 3)
    return dict(e=gen.random_set_expr(rng, universe, alpha, width), alpha=Ordinal.of(alpha), width=width)


def check_regular(e, alpha: Ordinal, width: int) -> Optional[str]:
    c = compile_regular(e, alpha, width)
    found = r_alpha(c, alpha)
    if found != evaluate(e):
        return f"R_{alpha} of the compiled scheme is {sorted(found)} instead of {sorted(evaluate(e))}"
    return None


# Re-indexing


def generate_reindex(rng, bounds) -> Inputs:
    m = int(rng.integers(1, 7))
    svec = gen.random_svec(rng, m, 5)
    longer = svec + tuple(gen.random_seq(rng, k + 1, 5) for k in range(m + 1, m + 1 + int(rng.integers(0, 3))))
    return dict(svec=svec, longer=longer, other=gen.random_svec(rng, int(rng.integers(1, 7)), 5))


def check_reindex(svec, longer, other) -> Optional[str]:
    svec, longer, other = check_svec(svec), check_svec(longer), check_svec(other)
    m = len(svec)
    if rho_inverse(rho(svec)) != svec:
        return "rho does not round-trip"
    for k in range(m + 1):
        if len(delta(svec, k) + xi(svec, k)) != m or len(rho(svec)) != m:
            return f"|delta_{k} ⌢ xi_{k}| should be {m}"
    for u, v in ((svec, longer), (svec, other), (other, svec)):
        if extends(v, u) != is_prefix(rho(u), rho(v)):
            return "rho should preserve and reflect extension"
    for k in range(m + 1):
        if delta(longer, k) != delta(svec, k) or not is_prefix(xi(svec, k), xi(longer, k)):
            return f"delta_{k} should be stable and xi_{k} should grow along extensions"
    return None


# Antitonicity


def generate_antitone(rng, bounds) -> Inputs:
    universe = _universe(rng, bounds, cap=8)
    return dict(c=gen.random_scheme(rng, universe, depth=3, width=3))


def check_antitone(c) -> Optional[str]:
    if not is_antitone(c, REGULAR_CLASSES):
        return "R_alpha is not antitone in alpha or misses A(C)"
    return None


# Brooms


def generate_broom(rng, bounds) -> Inputs:
    alpha = _pick(rng, BROOM_ORDINALS)
    base = gen.random_broom(rng, alpha, width=3)
    return dict(
        alpha=alpha,
        a=gen.random_inf_broom(rng, base, width=3),
        gamma=gen.random_below(rng, alpha) + 2,
        width=bounds.width + 2,
    )


def check_broom(alpha: Ordinal, a: InfBroomExpr, gamma: Ordinal, width: int) -> Optional[str]:
    b = a.base
    if classify_broom(b) != alpha:
        return f"generated as class {alpha} but classified {classify_broom(b)}"
    for x in (b, a):
        report = rank_lemma_check(x)
        if not report.passed:
            return f"rank lemma fails at {alpha} (extension={report.extension}), surviving {report.surviving[:3]}"
    if not diie_matches_closure(a):
        return "D_iie of the extension differs from the closure of its base"
    if alpha.is_finite and alpha.to_int() <= 4 and not hierarchy_check(b, max_constant(b) + 3):
        return "the classifier disagrees with brute force on the denotation"
    report = handle_partition_check(a, gamma, width, depth=4)
    if not report.passed:
        return f"<{gamma}-handles do not partition the extension: uncovered {report.uncovered[:3]}"
    apart = [extend_broom(handle((0,), b), a.strategy), extend_broom(handle((1,), b), a.strategy)]
    if not almost_disjoint_check(apart):
        return "extensions with disjoint bases are not almost disjoint"
    if isinstance(a.strategy, ConeStrategy):
        shifted = InfBroomExpr(b, replace(a.strategy, offset=a.strategy.offset + 1), a.per_leaf)
        if almost_disjoint_check([a, shifted]):
            return "extensions sharing a tail family should have an infinite intersection"
    return None


def generate_tilde(rng, bounds) -> Inputs:
    alpha = _pick(rng, TILDE_ORDINALS)
    return dict(a=gen.random_inf_broom(rng, gen.random_broom(rng, alpha, width=3), width=3))


def check_tilde(a: InfBroomExpr) -> Optional[str]:
    if not tilde_law_holds(a):
        return f"the class of B tilde is not 2 + {classify_broom(a.base)}"
    return None


# Finite topology


def _topology_inputs(rng: np.random.Generator, x: FinSpace) -> Inputs:
    p = gen.random_subset(rng, _points_universe(x))
    parts = gen.random_zoom_parts(rng, x)
    clopens = [c for c in gen.clopen_sets(x) if c]
    count = int(rng.integers(1, min(3, len(clopens)) + 1))
    family = tuple(clopens[int(i)] for i in rng.choice(len(clopens), size=count, replace=False))
    extensions = gen.random_extensions(rng, x, family)
    subbasis = tuple(gen.random_subset(rng, _points_universe(x), 0.4) for _ in range(int(rng.integers(0, 4))))
    return dict(
        x=x,
        p=p,
        parts=tuple(sorted(parts.items())),
        family=family,
        extensions=tuple(extensions[n] for n in range(len(family))),
        subbasis=subbasis,
    )


def _points_universe(x: FinSpace) -> Universe:
    return Universe(x.points)


def generate_topology(rng, bounds) -> Inputs:
    low, high = TOPOLOGY_SIZES
    return _topology_inputs(rng, gen.random_space(rng, int(rng.integers(low, high + 1))))


def exhaustive_topology(seed: int, max_points: int) -> Iterator[Inputs]:
    for size in range(1, max_points + 1):
        for index, x in enumerate(gen.enumerate_spaces(size)):
            yield _topology_inputs(make_rng(seed, size * 100_000 + index), x)


def check_topology(x: FinSpace, p, parts, family, extensions, subbasis) -> Optional[str]:
    p, parts = frozenset(p), {i: part for i, part in parts}
    family = tuple(frozenset(a) for a in family)
    extensions = dict(enumerate(extensions))
    if ClosureOperator(x.points, x.closure).to_space() != x:
        return "the closure operator does not give back the topology"
    if generate_space_topology(x.points, subbasis).opens != close_under_operations(x.points, subbasis):
        return "the generated topology differs from closing the subbasis under unions and intersections"
    failed = [name for name, ok in w_laws(x, p).items() if not ok]
    if failed:
        return f"W operator laws fail on {sorted_points(p)}: {failed}"
    zoom = zoom_space(x, parts)
    if not v_algebra_holds(zoom):
        return "V_U does not commute with unions and intersections"
    if parts:
        selector = {i: sorted_points(part.points)[0] for i, part in parts.items()}
        copy = closed_copy(zoom, selector)
        if not copy.homeomorphic or not copy.section_is_identity:
            return "Y_s is not a homeomorphic copy of the base"
    if not check_axioms_a(x, family).passed:
        return "(A1) fails on a family of clopen sets"
    amalgamate(x, family, extensions)
    if not idempotence_holds(x, family):
        return "amalgamating trivial extensions changes the space"
    return None


SUITES: Dict[Suite, SuiteSpec] = {
    Suite.ORDINAL: SuiteSpec(generate_ordinal, check_ordinal, "Cantor normal form arithmetic and pi_lambda"),
    Suite.TREES: SuiteSpec(generate_trees, check_trees, "tree expressions against explicit trees"),
    Suite.CANONICAL_RANK: SuiteSpec(generate_canonical_rank, check_canonical_rank, "r_l(T_a) = r_i(T_a) = a"),
    Suite.DERIVE: SuiteSpec(generate_derive, check_derive, "derivatives, their iterates and ranks"),
    Suite.LEAF_SCHEME: SuiteSpec(generate_leaf_scheme, check_leaf_scheme, "simple representations and shrinking"),
    Suite.RT_ORACLE: SuiteSpec(generate_rt_oracle, check_rt_oracle, "R_T against admissible-map search"),
    Suite.REGULAR: SuiteSpec(generate_regular, check_regular, "R_a(compile_regular(e, a)) = eval(e)"),
    Suite.REINDEX: SuiteSpec(generate_reindex, check_reindex, "rho, delta_k and xi_k"),
    Suite.ANTITONE: SuiteSpec(generate_antitone, check_antitone, "R_a decreasing in a and above A(C)"),
    Suite.BROOM: SuiteSpec(generate_broom, check_broom, "broom classes, rank lemma, handles, almost disjointness"),
    Suite.TILDE: SuiteSpec(generate_tilde, check_tilde, "class of B tilde"),
    Suite.TOPOLOGY: SuiteSpec(
        generate_topology, check_topology, "W operator, zoom spaces, amalgamations", exhaustive_topology
    ),
}
