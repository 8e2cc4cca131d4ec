"""Reference tables used by the demos and tests."""
from __future__ import annotations

import numpy as np

from .tables import ContingencyTable

# Unaided distance vision of 7477 women, right eye (rows) by left eye (columns),
# grades best .. worst.
VISION = ContingencyTable(
    np.array(
        [
            [1520, 266, 124, 66],
            [234, 1512, 432, 78],
            [117, 362, 1772, 205],
            [36, 82, 179, 492],
        ]
    )
)

# Small table with prime entries; its QS_{2/3} fit has an algebraic MLE of degree 15.
PRIMES = ContingencyTable(np.array([[2, 3, 5], [11, 13, 17], [19, 23, 29]]))

# Simulated 3x3 tables: one drawn from QS_0, one from QS_1, and a variant of
# the first whose best t is interior.
SIM_A = ContingencyTable(np.array([[28, 10, 15], [122, 126, 102], [49, 22, 26]]))
SIM_B = ContingencyTable(np.array([[38, 128, 36], [5, 119, 43], [12, 88, 31]]))
SIM_C = ContingencyTable(np.array([[28, 12, 25], [122, 126, 102], [49, 22, 26]]))

SYMMETRIC = ContingencyTable(np.array([[40, 12, 7], [12, 30, 9], [7, 9, 25]]))

# Reference expected frequencies for VISION under QS_0, QS_{2/3} and QS_1,
# off-diagonal cells only (diagonal cells are reproduced exactly).
VISION_EXPECTED = {
    0.0: {
        (0, 1): 263.38, (0, 2): 133.58, (0, 3): 59.04,
        (1, 0): 236.62, (1, 2): 418.99, (1, 3): 88.39,
        (2, 0): 107.42, (2, 1): 375.01, (2, 3): 201.57,
        (3, 0): 42.96, (3, 1): 71.61, (3, 2): 182.43,
    },
    2.0 / 3.0: {
        (0, 1): 263.38, (0, 2): 133.59, (0, 3): 59.09,
        (1, 0): 236.62, (1, 2): 418.90, (1, 3): 88.40,
        (2, 0): 107.40, (2, 1): 375.10, (2, 3): 201.58,
        (3, 0): 42.91, (3, 1): 71.60, (3, 2): 182.42,
    },
    1.0: {
        (0, 1): 263.39, (0, 2): 133.60, (0, 3): 59.09,
        (1, 0): 236.61, (1, 2): 418.90, (1, 3): 88.40,
        (2, 0): 107.40, (2, 1): 375.10, (2, 3): 201.58,
        (3, 0): 42.91, (3, 1): 71.60, (3, 2): 182.42,
    },
}

K4_MINUS_EDGE = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4))
