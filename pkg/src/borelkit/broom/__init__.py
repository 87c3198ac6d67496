# flake8: noqa
from borelkit.broom.checks import (
    RankLemmaReport,
    almost_disjoint_check,
    hierarchy_check,
    min_class,
    pair_intersection_grows,
    rank_lemma_check,
)
from borelkit.broom.expr import (
    BroomExpr,
    BroomFamily,
    FiniteList,
    Fork,
    Handle,
    LadderClosure,
    PatchedBranches,
    RankLadder,
    Trivial,
    UniformTail,
    broom_closure_tree,
    classify_broom,
    contains,
    denotation,
    even_above,
    handle,
    handle_of,
    max_constant,
    replace_trivial,
    restrict,
    standard_broom,
)
from borelkit.broom.extension import (
    ConeStrategy,
    ExtensionStrategy,
    InfBroomExpr,
    ListedStrategy,
    b_tilde,
    broom_diie,
    cone_offsets,
    diie_matches_closure,
    extend_broom,
    inf_closure_tree,
    inf_denotation,
    normalize,
    tilde_law_holds,
)
