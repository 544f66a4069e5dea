#---------------------------------------------------------------------------
# Frozen boundary: domain U, boundary points, components and cusps
#---------------------------------------------------------------------------

import numpy as np
import pytest

from skewwall.sfun import ActionPoint, T, zSprime3
from skewwall.boundary import (
    domain_U,
    tau_of_z,
    boundary_point,
    boundary_residuals,
    dchi_dtau,
    end_limits,
    cusp_function,
    find_cusps,
    glued_limit,
    trace_components,
    components_to_frame,
)
from skewwall.utils import DomainViolation

#---------------------------------------------------------------------------
# domain

class TestDomainU:
    """Intervals of the real line carrying the boundary."""

    def test_two_cusps(self, two_cusps_wall):
        dom = domain_U(two_cusps_wall)
        assert len(dom)==6
        assert [itv.kind for itv in dom]==['left']+['segment']*4+['right']
        assert [itv.segment for itv in dom][1:-1]==[1, 2, 3, 5]
        # c_0 = 1 at V_0 and c_2 = 1 at V_2
        assert [(k, k1) for k, k1, _ in dom.glue]==[(0, 1), (2, 3)]
        assert dom.merge==[]

    def test_smooth_wall(self, smooth_wall):
        dom = domain_U(smooth_wall)
        assert [itv.kind for itv in dom]==['left', 'segment', 'right']
        # c_3 = 0: the lattice segment and the right interval merge
        assert [(k, k1) for k, k1, _ in dom.merge]==[(1, 2)]

    def test_find(self, two_cusps_wall):
        dom = domain_U(two_cusps_wall)
        assert dom.find(-5.)==0
        assert dom.find(np.exp(2.5))==4
        assert dom.find(np.exp(2.02)) is None

#---------------------------------------------------------------------------
# boundary points

class TestBoundaryPoint:
    """(tau(z), chi(z)) and the double root condition."""

    @pytest.mark.parametrize("z", [-3., -0.5, 1.5, 2.9, 10., 40.])
    def test_residuals(self, two_cusps_wall, z):
        tau, chi = boundary_point(two_cusps_wall, z)
        r1, r2 = boundary_residuals(two_cusps_wall, z)
        scale = 1.+abs(chi)
        assert r1 < 1e-9*scale
        assert r2 < 1e-9*max(1., abs(T(two_cusps_wall, z)))

    def test_tau_formula(self, two_cusps_wall):
        z = 1.5
        assert np.exp(tau_of_z(two_cusps_wall, z))==pytest.approx(z-1./T(two_cusps_wall, z))

    def test_outside_U(self, two_cusps_wall):
        with pytest.raises(DomainViolation):
            boundary_point(two_cusps_wall, np.exp(2.02))

    def test_slope(self, two_cusps_wall):
        z, h = 1.5, 1e-6
        t0, c0 = boundary_point(two_cusps_wall, z-h)
        t1, c1 = boundary_point(two_cusps_wall, z+h)
        assert dchi_dtau(two_cusps_wall, z)==pytest.approx((c1-c0)/(t1-t0), rel=1e-5)

    def test_v_wall_collapses(self, v_wall):
        # T = 1/(z-1): the whole boundary collapses onto the corner (0, 0)
        for z in (-2., 0.3, 3., 8.):
            tau, chi = boundary_point(v_wall, z)
            assert tau==pytest.approx(0., abs=1e-12)
            assert chi==pytest.approx(0., abs=1e-12)

    def test_end_limits_at_infinity(self, two_cusps_wall):
        dom = domain_U(two_cusps_wall)
        lim = end_limits(two_cusps_wall, len(dom)-1, dom)
        tau, chi = lim.hi
        c = two_cusps_wall.jumps()
        assert tau==pytest.approx(np.log(np.sum(c*np.exp(two_cusps_wall.corners))))
        far_tau, far_chi = boundary_point(two_cusps_wall, 1e7)
        assert far_tau==pytest.approx(tau, abs=1e-4)
        assert far_chi==pytest.approx(chi, abs=1e-4)

    def test_end_limits_at_pole(self, two_cusps_wall):
        dom = domain_U(two_cusps_wall)
        # interval 4 is (e^{2.05}, e^3), e^3 carries c_5 = -0.15
        lim = end_limits(two_cusps_wall, 4, dom)
        assert lim.hi[0]==pytest.approx(3.)
        assert lim.hi[1]==np.inf

#---------------------------------------------------------------------------
# cusps and components

class TestCusps:
    """Cusp counts of the golden walls."""

    def test_two_cusps(self, two_cusps_wall):
        cusps = find_cusps(two_cusps_wall)
        assert len(cusps)==2
        for z, tau, chi in cusps:
            assert abs(cusp_function(two_cusps_wall, z)) < 1e-6*max(1., T(two_cusps_wall, z)**2)

    def test_three_cusps(self, three_cusps_wall):
        assert len(find_cusps(three_cusps_wall))==3

    def test_deep_corners(self, deep_corners_wall):
        assert len(find_cusps(deep_corners_wall))==2

    def test_v_wall(self, v_wall):
        # T' + T^2 vanishes identically
        assert len(find_cusps(v_wall))==0

    def test_triple_critical_point(self, two_cusps_wall, three_cusps_wall):
        # S' = S'' = S''' = 0 at a cusp
        for w in (two_cusps_wall, three_cusps_wall):
            for z, tau, chi in find_cusps(w):
                ap = ActionPoint(w, tau, chi, strict=False)
                assert abs(zSprime3(ap, z)) < 1e-8*max(1., T(w, z)**2)

    def test_brentq_refines(self, two_cusps_wall):
        for z, tau, chi in find_cusps(two_cusps_wall):
            assert abs(float(tau_of_z(two_cusps_wall, z))-tau) < 1e-12
            assert np.isfinite(chi)

    def test_deep_corner_end_limits(self, deep_corners_wall):
        # e^{-12} is below the absolute pole guard of T
        dom = domain_U(deep_corners_wall)
        for k in range(len(dom)):
            lim = end_limits(deep_corners_wall, k, dom)
            assert np.all(np.isfinite(lim.lo[:1])) and np.all(np.isfinite(lim.hi[:1]))

    def test_glued_corner_side(self, two_cusps_wall):
        # positive limit at e^{1.05}: the cusp lies right of the corner
        assert glued_limit(two_cusps_wall, 2) > 0
        zc = np.exp(1.05)
        assert len([z for z, _, _ in find_cusps(two_cusps_wall) if zc < z < np.exp(2.)])==1

    def test_cusp_on_glued_corner(self, razor_wall):
        assert glued_limit(razor_wall, 2)==pytest.approx(0., abs=1e-12)
        cusps = find_cusps(razor_wall)
        assert len(cusps)==1
        z, tau, chi = cusps[0]
        assert (z, tau)==(1., 0.)
        assert np.isfinite(chi)

    def test_collapsed_corner_is_not_a_cusp(self, v_wall):
        assert glued_limit(v_wall, 1)==0.
        assert find_cusps(v_wall)==[]

class TestTraceComponents:
    """Connected components of the frozen boundary."""

    def test_two_cusps(self, two_cusps_wall):
        comps = trace_components(two_cusps_wall, samples_per_interval=200, chi_cap=10.)
        assert len(comps)==3
        assert comps[0].kind=='bottom'
        assert sum(c.cusp is not None for c in comps)==2
        assert all(c.cusp is not None for c in comps if c.kind=='corner')
        for c in comps:
            assert np.all(c.chi <= 10.)
            assert len(c) > 0

    def test_three_cusps(self, three_cusps_wall):
        comps = trace_components(three_cusps_wall, samples_per_interval=200, chi_cap=10.)
        assert len(comps)==4

    def test_deep_corners(self, deep_corners_wall):
        comps = trace_components(deep_corners_wall, samples_per_interval=200, chi_cap=10.)
        assert len(comps)==3

    def test_razor_corner(self, razor_wall):
        comps = trace_components(razor_wall, samples_per_interval=200, chi_cap=10.)
        assert len(comps)==2
        corner = [c for c in comps if c.kind=='corner']
        assert len(corner)==1
        assert corner[0].cusp[:2]==(1., 0.)

    def test_frame(self, two_cusps_wall):
        comps = trace_components(two_cusps_wall, samples_per_interval=100, chi_cap=10.)
        df = components_to_frame(comps)
        assert list(df.columns)==['z', 'tau', 'chi', 'component_id', 'is_cusp']
        assert int(df.is_cusp.sum())==2
        assert set(df.component_id)=={0, 1, 2}
