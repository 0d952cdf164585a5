import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hklattice.lattice import make_lattice  # noqa: E402

HT_GRAM = [[6, 6], [6, 2]]

# fixed corpus of definite lattices, rank <= 4, entries in [-6, 6]
CORPUS = [
    [[2]],
    [[6]],
    [[-4]],
    [[2, 0], [0, 2]],
    [[2, 1], [1, 2]],
    [[2, 1], [1, 4]],
    [[6, -3], [-3, 6]],
    [[4, 2], [2, 6]],
    [[-2, 1], [1, -2]],
    [[2, 0], [0, 6]],
    [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    [[2, 0, 0], [0, 2, 0], [0, 0, 2]],
    [[2, 1, 0], [1, 4, 1], [0, 1, 6]],
    [[-2, -1, 0], [-1, -2, -1], [0, -1, -4]],
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[3, 1, 1], [1, 3, 1], [1, 1, 3]],
    [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]],
    [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
    [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]],
    [[4, 1, 0, 1], [1, 4, 1, 0], [0, 1, 4, 1], [1, 0, 1, 4]],
]


@pytest.fixture
def ht():
    return make_lattice(HT_GRAM, "NS(X)")


@pytest.fixture
def ht_specs():
    from hklattice.cones import WallSpec

    return [WallSpec(-10, 2), WallSpec(-2, 1), WallSpec(-2, 2)]
