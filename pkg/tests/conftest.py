#---------------------------------------------------------------------------
# Shared fixtures: golden back walls and tiny lattice instances
#---------------------------------------------------------------------------

import os

import pytest

from skewwall.wall import BackWall, LatticeWall

WALLS_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'configs', 'walls')

@pytest.fixture
def walls_dir():
    return WALLS_DIR

@pytest.fixture
def two_cusps_wall():
    """Two cusps, three boundary components."""
    return BackWall([0, 1, 1.05, 2, 2.05, 3, 3.05], [1, -1, 1, 0.7, 1, 0.7])

@pytest.fixture
def three_cusps_wall():
    """Three cusps, four boundary components."""
    return BackWall([0.7, 1, 1.05, 1.2, 1.25, 1.5, 1.55, 3, 3.1], [1, 0.7, 1, 0.7, 1, 0.7, 1, -1])

@pytest.fixture
def deep_corners_wall():
    return BackWall([-12.1, -12, -8.1, -8, -4, 0], [-0.9, -1, -0.9, 1, -1])

@pytest.fixture
def v_wall():
    """|tau|: everything frozen, the boundary collapses onto the corner."""
    return BackWall([-1, 0, 1], [-1, 1], anchor=1)

@pytest.fixture
def smooth_wall():
    """Non-lattice interior slopes, the last slope 1 leaves no jump at 3. Liquid far above the wall."""
    return BackWall([0, 1, 2, 3], [-0.5, 0.3, 1])

@pytest.fixture
def unit_box():
    """Empty partition in a 1 x 1 box."""
    return LatticeWall.from_partition((), 1, 1, q=0.5)

@pytest.fixture
def razor_wall():
    """Glued (-1, +1) corner at 0 where the other poles of T cancel: the cusp sits on the corner."""
    return BackWall([-2, -1, 0, 1, 2], [0, -1, 1, 0])
