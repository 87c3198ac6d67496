# flake8: noqa
from borelkit.derive.ranks import *
from borelkit.derive.derivatives import derive, derive_finite_tree, derive_i, derive_iie, derive_l, iterate
from borelkit.trees.rank import Rank
