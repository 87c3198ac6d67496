# flake8: noqa
from borelkit.suslin.scheme import (
    SuslinScheme,
    closed_scheme,
    constant_scheme,
    refines,
    scheme_from_table,
    suslin_operation,
)
from borelkit.suslin.coding import delta, delta_xi, pair_sequences, rho, rho_inverse, unpair_sequence, xi
from borelkit.suslin.engine import RtEngine, is_antitone, r_alpha, rt_member, rt_set
from borelkit.suslin.admissible import (
    AdmissibleMap,
    brute_force_member,
    brute_force_r_set,
    embed_check,
    enumerate_admissible,
    equivalent_trees,
    find_embedding,
)
from borelkit.suslin.remainder import fa_sufficiency_check, remainder_check, s_tree
from borelkit.suslin.compile import compile_regular, lift, limit_ladder, meet, pair_refine
