# flake8: noqa
from borelkit.schemes.setexpr import Base, Inter, SetExpr, Union, Universe, certifies, evaluate, set_class
from borelkit.schemes.leaf import (
    LeafScheme,
    compile_simple,
    eval_scheme,
    extend_scheme,
    restrict_scheme,
    shrink_scheme,
)
