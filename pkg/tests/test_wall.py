#---------------------------------------------------------------------------
# Back walls: validation, evaluation, corners, lattice walls, discretization
#---------------------------------------------------------------------------

import numpy as np
import pytest

from skewwall.wall import (
    BackWall,
    LatticeWall,
    eval_wall,
    classify_corners,
    count_cusp_corners,
    box_extend,
    discretize,
    sup_deviation,
    partition_steps,
)
from skewwall.utils import (
    WallError,
    NonIncreasingCorners,
    SlopeOutOfRange,
    EqualAdjacentSlopes,
    ScaleTooCoarse,
    DomainViolation,
)

#---------------------------------------------------------------------------
# validation

class TestValidateWall:
    """Construction rejects malformed walls."""

    def test_non_increasing(self):
        with pytest.raises(NonIncreasingCorners):
            BackWall([0, 1, 1], [0.5, -0.5])

    def test_single_corner(self):
        with pytest.raises(NonIncreasingCorners):
            BackWall([0], [])

    def test_slope_out_of_range(self):
        with pytest.raises(SlopeOutOfRange):
            BackWall([0, 1, 2], [0.5, 1.5])

    def test_wrong_number_of_slopes(self):
        with pytest.raises(SlopeOutOfRange):
            BackWall([0, 1, 2], [0.5])

    def test_equal_adjacent_slopes(self):
        with pytest.raises(EqualAdjacentSlopes):
            BackWall([0, 1, 2], [0.3, 0.3])

    def test_errors_are_value_errors(self):
        with pytest.raises(ValueError):
            BackWall([0, 1, 2], [0.3, 0.3])
        assert issubclass(ScaleTooCoarse, WallError)

    def test_end_slopes_may_match_extension(self, two_cusps_wall):
        w = BackWall([0, 1], [-1.])
        assert w.n==1
        # both end corners of |tau| carry no jump
        assert BackWall([-1, 0, 1], [-1, 1]).jumps().tolist()==[0., 1., 0.]
        assert two_cusps_wall.n==6

#---------------------------------------------------------------------------
# evaluation

class TestEvalWall:
    """Heights, box extension and jumps."""

    def test_default_anchor(self):
        w = BackWall([-2, 0, 2], [-0.5, 0.5])
        assert w.anchor==2.
        assert eval_wall(w, 0.)==pytest.approx(1.)

    def test_inside(self, smooth_wall):
        np.testing.assert_allclose(smooth_wall.heights, [0., -0.5, -0.2, 0.8])
        assert eval_wall(smooth_wall, 1.5)==pytest.approx(-0.35)

    def test_box_extension(self, smooth_wall):
        assert eval_wall(smooth_wall, -1.)==pytest.approx(1.)
        assert eval_wall(smooth_wall, 4.)==pytest.approx(1.8)

    def test_vectorized(self, v_wall):
        taus = np.linspace(-3, 3, 13)
        np.testing.assert_allclose(eval_wall(v_wall, taus), np.abs(taus), atol=1e-14)

    def test_jumps(self, v_wall, two_cusps_wall):
        np.testing.assert_allclose(v_wall.jumps(), [0., 1., 0.])
        np.testing.assert_allclose(two_cusps_wall.jumps(), [1., -1., 1., -0.15, 0.15, -0.15, 0.15])
        # residues of T sum to one
        assert two_cusps_wall.jumps().sum()==pytest.approx(1.)

    def test_segment_index(self, smooth_wall):
        assert smooth_wall.segment_index(0.5)==1
        assert smooth_wall.segment_index(2.5)==3
        with pytest.raises(DomainViolation):
            smooth_wall.segment_index(1.)
        with pytest.raises(DomainViolation):
            smooth_wall.segment_index(3.5)

#---------------------------------------------------------------------------
# corners

class TestCorners:
    """Corner classification and cusp counting."""

    def test_classify(self, two_cusps_wall):
        kinds = [c.kind for c in classify_corners(two_cusps_wall)]
        assert kinds==['inner', 'outer', 'inner', 'outer', 'inner']
        assert all(c.lattice_adjacent for c in classify_corners(two_cusps_wall))

    def test_cusp_corners(self, two_cusps_wall, three_cusps_wall, deep_corners_wall):
        assert count_cusp_corners(two_cusps_wall)==2
        assert count_cusp_corners(three_cusps_wall)==3
        assert count_cusp_corners(deep_corners_wall)==2

    def test_single_lattice_corner(self, smooth_wall):
        assert count_cusp_corners(smooth_wall)==1
        assert count_cusp_corners(BackWall([0, 1, 2], [-0.5, 0.3]))==0

#---------------------------------------------------------------------------
# box extension

class TestBoxExtend:
    """Explicit end segments of slope -1 and +1."""

    def test_heights_unchanged(self, smooth_wall):
        ext = box_extend(smooth_wall)
        taus = np.linspace(-4, 7, 45)
        np.testing.assert_allclose(eval_wall(ext, taus), eval_wall(smooth_wall, taus), atol=1e-12)

    def test_ends(self, smooth_wall):
        ext = box_extend(smooth_wall, margin=2.)
        assert ext.slopes[0]==-1. and ext.slopes[-1]==1.
        assert ext.corners[0]==-2.

    def test_idempotent(self, smooth_wall, v_wall):
        ext = box_extend(smooth_wall)
        assert box_extend(ext)==ext
        assert box_extend(v_wall)==v_wall

    def test_jumps_unchanged(self, smooth_wall):
        ext = box_extend(smooth_wall)
        np.testing.assert_allclose(ext.jumps()[1:], smooth_wall.jumps())
        assert ext.jumps()[0]==0.

#---------------------------------------------------------------------------
# lattice walls

class TestLatticeWall:
    """Lattice walls of partitions in a box."""

    def test_empty_box_steps(self):
        assert partition_steps((), 2, 3)==[1, 1, -1, -1, -1]

    def test_partition_steps(self):
        assert partition_steps((2, 1), 2, 2)==[-1, 1, -1, 1]

    def test_half_integer_sets(self):
        lw = LatticeWall.from_partition((2, 1), 2, 2, q=0.5)
        np.testing.assert_allclose(lw.d_plus, [-1.5, 0.5])
        np.testing.assert_allclose(lw.d_minus, [-0.5, 1.5])

    def test_b(self):
        lw = LatticeWall.from_partition((2, 1), 2, 2, q=0.5)
        np.testing.assert_array_equal(lw.b(np.arange(-4, 5)), [0, -1, -2, -3, -2, -3, -2, -1, 0])
        assert lw.b(0)==-2

    def test_parity(self):
        lw = LatticeWall.from_partition((3, 1), 3, 4, q=0.3)
        ts = np.arange(lw.t_left, lw.t_right+1)
        assert np.all((lw.b(ts)-ts)%2==0)

    def test_q_and_r(self):
        lw = LatticeWall.from_partition((), 1, 1, q=0.5)
        assert lw.r==pytest.approx(np.log(2.))
        assert lw.q==pytest.approx(0.5)

    def test_bad_partition(self):
        with pytest.raises(AssertionError):
            LatticeWall.from_partition((1, 2), 2, 2, q=0.5)
        with pytest.raises(AssertionError):
            LatticeWall.from_partition((3,), 2, 2, q=0.5)

    def test_to_backwall(self):
        lw = LatticeWall.from_partition((2, 1), 2, 2, q=0.8)
        w = lw.to_backwall()
        taus = np.linspace(lw.t_left*lw.r, lw.t_right*lw.r, 33)
        np.testing.assert_allclose(eval_wall(w, taus), lw.scaled_profile(taus), atol=1e-12)

#---------------------------------------------------------------------------
# discretization

class TestDiscretize:
    """Staircase approximations of continuous walls."""

    @pytest.mark.parametrize("r", [0.01, 0.005])
    def test_floor_deviation(self, two_cusps_wall, r):
        lw = discretize(two_cusps_wall, r, 'floor')
        assert sup_deviation(lw, two_cusps_wall) < 2*r*(1+1e-9)

    @pytest.mark.parametrize("r", [0.01, 0.005])
    def test_nearest_deviation(self, two_cusps_wall, r):
        lw = discretize(two_cusps_wall, r, 'nearest')
        assert sup_deviation(lw, two_cusps_wall) <= r*(1+1e-9)

    @pytest.mark.parametrize("scheme", ["floor", "nearest"])
    def test_lattice_slopes_round_consistently(self, two_cusps_wall, scheme):
        # V(r t)/r lands on or next to the rounding thresholds along the slope 1 segments
        lw = discretize(two_cusps_wall, 0.01, scheme)
        assert set(np.unique(lw.steps))<={-1, 1}
        assert lw.t_range==(0, 305)

    def test_floor_is_below(self, smooth_wall):
        lw = discretize(smooth_wall, 0.05, 'floor')
        taus = np.linspace(0, 3, 301)
        assert np.all(lw.scaled_profile(taus) <= eval_wall(smooth_wall, taus)+1e-9)

    def test_unit_steps(self, smooth_wall):
        lw = discretize(smooth_wall, 0.05)
        assert set(np.unique(lw.steps))<={-1, 1}
        assert lw.t_range==(0, 60)

    def test_too_coarse(self, two_cusps_wall):
        with pytest.raises(ScaleTooCoarse):
            discretize(two_cusps_wall, 0.1)

    def test_unknown_scheme(self, smooth_wall):
        with pytest.raises(AssertionError):
            discretize(smooth_wall, 0.05, 'ceil')
