# flake8: noqa
from borelkit.trees.seq import *
from borelkit.trees.finite import *
from borelkit.trees.rank import *
from borelkit.trees.expr import *
from borelkit.trees.canonical import *
