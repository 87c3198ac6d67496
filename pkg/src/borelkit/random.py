from typing import Optional

import numpy as np


def make_rng(seed: int, case: Optional[int] = None) -> np.random.Generator:
    """A generator for one seed, or for one case of a seeded run; cases are independent of each other."""
    return np.random.default_rng(seed if case is None else [seed, case])
