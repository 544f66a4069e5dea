#---------------------------------------------------------------------------
# Critical points of the action: counting, locating, classifying
#---------------------------------------------------------------------------

import numpy as np
import pytest

from skewwall.sfun import ActionPoint, zSprime
from skewwall.critical import (
    Phase,
    branch_points,
    certify,
    winding_count,
    asymptotic_root,
    asymptotic_eps,
    homotopy_root,
    classify,
    critical_points,
    probe_tau,
    classify_grid,
    corner_equation,
    corner_scaling_solve,
    corner_regime,
    corner_height,
    corner_scaling_parameter,
)
from skewwall.utils import (
    LatticeSlopeSegment,
    NearBoundary,
    DomainViolation,
)

#---------------------------------------------------------------------------
# real axis structure

class TestBranchPoints:
    """Branch points of z S'(z) and their log coefficients."""

    def test_v_wall(self, v_wall):
        poles, kappa = branch_points(ActionPoint(v_wall, 0.5, 0.))
        np.testing.assert_allclose(poles, [1., np.exp(0.5)])
        np.testing.assert_allclose(kappa, [1., -1.])

    def test_kappa_are_jumps(self, smooth_wall):
        poles, kappa = branch_points(ActionPoint(smooth_wall, 1.5, 0.))
        np.testing.assert_allclose(poles, np.exp([0., 1., 1.5, 2.]))
        np.testing.assert_allclose(kappa, [0.25, 0.4, -1., 0.35])

#---------------------------------------------------------------------------
# root count

class TestCertify:
    """Exact count of roots in the upper half plane."""

    @pytest.mark.parametrize("chi", [-2., 0., 0.1, 0.5, 2., 10.])
    def test_v_wall_is_frozen(self, v_wall, chi):
        assert certify(ActionPoint(v_wall, 0.5, chi))==0

    def test_liquid_far_above(self, smooth_wall):
        assert certify(ActionPoint(smooth_wall, 1.5, 8.))==1

    def test_frozen_below(self, smooth_wall):
        assert certify(ActionPoint(smooth_wall, 1.5, -3.))==0

    def test_near_boundary(self, v_wall):
        # z S'(infinity) vanishes at chi = V(tau)/2
        with pytest.raises(NearBoundary):
            certify(ActionPoint(v_wall, 0.5, 0.25))

    @pytest.mark.parametrize("chi", [-3., 6.])
    def test_winding_agrees(self, smooth_wall, chi):
        ap = ActionPoint(smooth_wall, 1.5, chi)
        assert winding_count(ap)==certify(ap)

#---------------------------------------------------------------------------
# large chi

class TestAsymptoticRoot:
    """Upper critical point for large chi."""

    def test_upper_half_plane(self, smooth_wall):
        z = asymptotic_root(ActionPoint(smooth_wall, 1.5, 12.))
        assert z.imag > 0

    def test_matches_newton(self, smooth_wall):
        ap = ActionPoint(smooth_wall, 1.5, 12.)
        ph = classify(ap)
        et = np.exp(ap.tau)
        ratio = (ph.z_cr-et)/(asymptotic_root(ap)-et)
        assert abs(ratio-1.) < 1e-3

    def test_lattice_segment(self, smooth_wall):
        with pytest.raises(LatticeSlopeSegment):
            asymptotic_root(ActionPoint(smooth_wall, 2.5, 5.))

    def test_error_decreases_with_chi(self, smooth_wall):
        # compared in w = z e^{-tau} - 1, which keeps the digits lost in z - e^tau
        errs = []
        for chi in (10., 15., 20.):
            ap = ActionPoint(smooth_wall, 1.5, chi)
            w_root = np.exp(homotopy_root(ap))
            w_asym = np.expm1(-asymptotic_eps(ap))
            errs.append(abs(w_root/w_asym-1.))
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 1e-4


#---------------------------------------------------------------------------
# classification

class TestClassify:
    """Liquid and frozen phases."""

    @pytest.mark.parametrize("chi", [2., 6.])
    def test_liquid(self, smooth_wall, chi):
        ap = ActionPoint(smooth_wall, 1.5, chi)
        ph = classify(ap)
        assert ph.liquid and ph.count==1
        assert ph.z_cr.imag > 0
        assert ph.residual < 1e-10
        assert abs(zSprime(ap, ph.z_cr)) < 1e-8

    def test_seed_chi(self, smooth_wall):
        ph = classify(ActionPoint(smooth_wall, 1.5, 20.))
        assert ph.liquid and ph.residual < 1e-10

    def test_frozen(self, smooth_wall):
        ph = classify(ActionPoint(smooth_wall, 1.5, -3.))
        assert ph.tag=='frozen' and ph.z_cr is None

    def test_v_wall(self, v_wall):
        assert not classify(ActionPoint(v_wall, 0.5, 3.)).liquid

    def test_lattice_segment(self, smooth_wall):
        # slope +1 on (2, 3): frozen next to the wall
        ph = classify(ActionPoint(smooth_wall, 2.5, 5.))
        assert ph.tag=='frozen' and ph.count==0

    def test_critical_points_pair(self, smooth_wall):
        pts = critical_points(ActionPoint(smooth_wall, 0.5, 4.))
        assert len(pts)==2
        assert pts[1]==pts[0].conjugate()

    def test_phase_tag(self):
        with pytest.raises(AssertionError):
            Phase('gas')

#---------------------------------------------------------------------------
# grids

class TestClassifyGrid:
    """Phase maps over (tau, chi) grids."""

    def test_probe_tau(self, smooth_wall):
        assert probe_tau(smooth_wall, 0.5)==0.5
        assert probe_tau(smooth_wall, 1.)==pytest.approx(1.+1e-6)
        assert probe_tau(smooth_wall, 3.)==pytest.approx(3.-1e-6)

    def test_grid(self, smooth_wall):
        df = classify_grid(smooth_wall, [0.5, 1.25, 1.5], [-3., 8.], verbose=False)
        assert list(df.columns)==['tau', 'chi', 'phase', 'count', 'z_re', 'z_im']
        assert len(df)==6
        assert set(df.phase)<={'liquid', 'frozen', 'boundary'}
        low = df[df.chi==-3.]
        high = df[df.chi==8.]
        assert (low.phase=='frozen').all()
        assert (high.phase=='liquid').all()
        assert (high.z_im > 0).all()

#---------------------------------------------------------------------------
# corners

class TestCornerScaling:
    """Scaling equation near a corner."""

    def test_regimes(self):
        assert corner_regime(0.3, 1., 'pToInf')=='frozen'
        assert corner_regime(-1., 0.3, 'pTo0')=='frozen'
        assert corner_regime(-1., 0.3, 'pToInf')=='bead'
        assert corner_regime(0.3, -1., 'pToInf')=='frozen'
        assert corner_regime(0.3, -0.5, 'pTo0')=='bead'

    def test_solutions(self):
        cs = corner_scaling_solve(1e3, -0.5, 1., 1)
        assert len(cs.s_solutions) >= 1
        for s in cs.s_solutions:
            res = min(abs(corner_equation(s, 1e3, -0.5, 1., 1, b)) for b in (1, -1))
            assert res/1e3 < 1e-9

    def test_parameter(self, smooth_wall):
        p, delta, beta_prev, beta_next = corner_scaling_parameter(smooth_wall, 1.01, 2.)
        assert delta==pytest.approx(0.01)
        assert (beta_prev, beta_next)==(-0.5, 0.3)
        expected = np.exp(2.-corner_height(smooth_wall, 1))*0.01**0.6
        assert p==pytest.approx(expected, rel=1e-12)

    def test_parameter_on_corner(self, smooth_wall):
        with pytest.raises(DomainViolation):
            corner_scaling_parameter(smooth_wall, 1., 2.)
