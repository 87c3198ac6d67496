# flake8: noqa
from borelkit.config.config import *
from borelkit.config.utils_config import *
