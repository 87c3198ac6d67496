# flake8: noqa
from borelkit.fintop.space import (
    ClosureOperator,
    FinSpace,
    close_under_operations,
    discrete,
    from_neighbourhoods,
    from_preorder,
    generate_topology,
    indiscrete,
    is_continuous,
    is_homeomorphism,
    is_open_map,
)
from borelkit.fintop.zoom import ClosedCopy, ZoomSpace, closed_copy, v_algebra_holds, zoom_space
from borelkit.fintop.wop import w_laws, w_operator
from borelkit.fintop.amalgamation import (
    Amalgamation,
    AxiomReport,
    StretchReport,
    amalgamate,
    check_amalgamation_set,
    check_axioms_a,
    idempotence_holds,
    stretch_check,
    trivial_extensions,
)
from borelkit.fintop.handles import HandleReport, gamma_handles, handle_partition_check
