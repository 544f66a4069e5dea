#---------------------------------------------------------------------------
# Action function: T(z), z S'(z), quadrature and S(z)
#---------------------------------------------------------------------------

import numpy as np
import pytest

from skewwall.sfun import (
    ActionPoint,
    action_pieces,
    T,
    zSprime,
    zSprime_real,
    zSprime_limits,
    zSprime2,
    zSprime3,
    quad_gl,
    limit_log_phi,
    S,
)
from skewwall.utils import PoleAt, BranchPoint, DomainViolation

#---------------------------------------------------------------------------
# T(z)

class TestT:
    """Partial fractions of the wall's jumps."""

    def test_v_wall(self, v_wall):
        # T(z) = 1/(z - 1)
        assert T(v_wall, 3.)==pytest.approx(0.5)
        assert T(v_wall, 1j)==pytest.approx(1/(1j-1))

    def test_real_in_real_out(self, two_cusps_wall):
        vals = T(two_cusps_wall, np.array([-1., 0.5, 100.]))
        assert vals.dtype==np.float64

    def test_pole(self, two_cusps_wall):
        with pytest.raises(PoleAt) as e:
            T(two_cusps_wall, np.exp(1.05))
        assert e.value.where==pytest.approx(1.05)

    def test_no_pole_without_jump(self, v_wall):
        # e^{-1} carries a zero jump
        assert np.isfinite(T(v_wall, np.exp(-1.)))

    def test_large_z(self, smooth_wall):
        # residues sum to one
        z = 1e8+1e8j
        assert abs(z*T(smooth_wall, z)-1.) < 1e-6

    @pytest.mark.parametrize("order", [1, 2])
    def test_derivatives(self, smooth_wall, order):
        z, h = 1.3+0.7j, 1e-5
        fd = (T(smooth_wall, z+h, order-1)-T(smooth_wall, z-h, order-1))/(2*h)
        assert abs(T(smooth_wall, z, order)-fd) < 1e-6*max(1., abs(fd))

#---------------------------------------------------------------------------
# action pieces

class TestActionPoint:
    """Log pieces and the affine term of z S'(z)."""

    def test_v_wall_pieces(self, v_wall):
        lo, hi, coef, left = action_pieces(v_wall, 0.5)
        np.testing.assert_allclose(lo, [0.])
        np.testing.assert_allclose(hi, [0.5])
        np.testing.assert_allclose(coef, [-1.])
        assert left.tolist()==[True]

    def test_pieces_outside_wall(self, smooth_wall):
        lo, hi, coef, left = action_pieces(smooth_wall, 4.)
        assert (lo[-1], hi[-1], coef[-1], left[-1])==(3., 4., -1., True)

    def test_strict(self, smooth_wall):
        with pytest.raises(DomainViolation):
            ActionPoint(smooth_wall, 1., 0.)
        ap = ActionPoint(smooth_wall, 1., 0., strict=False)
        assert ap.j is None

    def test_beta_and_height(self, smooth_wall):
        ap = ActionPoint(smooth_wall, 1.5, 2.)
        assert ap.beta==pytest.approx(0.3)
        assert ap.height==pytest.approx(-0.35)

#---------------------------------------------------------------------------
# z S'(z)

class TestZSprime:
    """Closed form of z S'(z) and its derivatives."""

    def test_limits(self, smooth_wall):
        ap = ActionPoint(smooth_wall, 1.5, 2.)
        f0, finf = zSprime_limits(ap)
        assert zSprime(ap, 1e-10j).real==pytest.approx(f0, abs=1e-8)
        assert zSprime(ap, 1e10*(1+1j)).real==pytest.approx(finf, abs=1e-8)

    def test_v_wall_limits(self, v_wall):
        ap = ActionPoint(v_wall, 0.5, 0.1)
        f0, finf = zSprime_limits(ap)
        assert f0==pytest.approx(-0.35)
        assert finf==pytest.approx(0.15)

    def test_scalar_is_piece_sum(self, smooth_wall):
        ap = ActionPoint(smooth_wall, 1.5, 2.)
        z = 1+1j
        lo, hi, coef, _ = action_pieces(smooth_wall, 1.5)
        expected = sum(c*np.log((z*np.exp(-b)-1)/(z*np.exp(-a)-1)) for a, b, c in zip(lo, hi, coef))+ap.c0
        val = zSprime(ap, z)
        assert isinstance(val, complex)
        assert val==pytest.approx(expected, abs=1e-12)
        assert zSprime(ap, None, w=z*np.exp(-1.5)-1)==pytest.approx(expected, abs=1e-12)

    def test_array_keeps_shape(self, smooth_wall):
        ap = ActionPoint(smooth_wall, 1.5, 2.)
        z = np.array([[1+1j, 2+0.5j, -1+3j], [0.2+0.1j, 5+1j, 3-2j]])
        vals = zSprime(ap, z)
        assert vals.shape==z.shape
        assert vals[1, 2]==pytest.approx(zSprime(ap, 3-2j), abs=1e-12)

    def test_linear_in_chi(self, smooth_wall):

        ap = ActionPoint(smooth_wall, 0.5, 1.)
        z = 0.8+0.4j
        assert zSprime(ap.with_chi(3.), z)-zSprime(ap, z)==pytest.approx(-2.)

    def test_local_coordinate(self, smooth_wall):
        ap = ActionPoint(smooth_wall, 1.5, 2.)
        z = 3.+0.2j
        w = z*np.exp(-ap.tau)-1
        assert zSprime(ap, None, w=w)==pytest.approx(zSprime(ap, z), rel=1e-12)

    def test_derivative(self, smooth_wall):
        ap = ActionPoint(smooth_wall, 1.5, 2.)
        z, h = 2.+1.1j, 1e-6
        fd = (zSprime(ap, z+h)-zSprime(ap, z-h))/(2*h)
        assert abs(zSprime2(ap, z)-fd) < 1e-6*max(1., abs(fd))

    def test_second_derivative(self, smooth_wall):
        ap = ActionPoint(smooth_wall, 1.5, 2.)
        z, h = 2.+1.1j, 1e-5
        fd = (zSprime2(ap, z+h)-zSprime2(ap, z-h))/(2*h)
        assert abs(zSprime3(ap, z)-fd) < 1e-6*max(1., abs(fd))

    def test_real_boundary_value(self, smooth_wall):
        ap = ActionPoint(smooth_wall, 1.5, 2.)
        for x in (0.5, 2., 3., 10., 30.):
            assert zSprime_real(ap, x)==pytest.approx(zSprime(ap, x+1e-10j), abs=1e-6)

    def test_upper_half_plane_is_analytic(self, smooth_wall):
        # no cut is met in the upper half plane
        ap = ActionPoint(smooth_wall, 0.5, 0.)
        xs = np.linspace(-20, 40, 301)
        vals = zSprime(ap, xs+0.3j)
        assert np.all(np.isfinite(vals))

    def test_branch_point(self, smooth_wall):
        ap = ActionPoint(smooth_wall, 1.5, 2.)
        with pytest.raises(BranchPoint):
            zSprime_real(ap, np.exp(1.))

    def test_e_tau_pole(self, smooth_wall):
        ap = ActionPoint(smooth_wall, 1.5, 2.)
        with pytest.raises(PoleAt):
            zSprime2(ap, np.exp(1.5))

#---------------------------------------------------------------------------
# quadrature

class TestQuadGL:
    """Adaptive Gauss-Legendre quadrature."""

    def test_polynomial(self):
        val, err = quad_gl(lambda x: x**2, 0., 1.)
        assert val.real==pytest.approx(1/3, rel=1e-14)
        assert err < 1e-12

    def test_sine(self):
        val, _ = quad_gl(np.sin, 0., np.pi)
        assert val.real==pytest.approx(2., rel=1e-12)

    def test_complex(self):
        val, _ = quad_gl(lambda x: np.exp(1j*x), 0., 1.)
        assert val==pytest.approx((np.exp(1j)-1)/1j, rel=1e-12)

    def test_log_singularity(self):
        val, _ = quad_gl(np.log, 0., 1., tol=1e-10)
        assert val.real==pytest.approx(-1., abs=1e-8)

    def test_empty(self):
        assert quad_gl(np.sin, 1., 1.)==(0j, 0.)

#---------------------------------------------------------------------------
# S(z)

class TestS:
    """Action by quadrature against the closed form of z S'(z)."""

    @pytest.mark.parametrize("z", [1.+1j, 3.+0.5j, -2.+1j])
    def test_derivative_matches_closed_form(self, smooth_wall, z):
        ap = ActionPoint(smooth_wall, 1.5, 2.)
        h = 1e-4
        fd = z*(S(ap, z+h, tol=1e-13)-S(ap, z-h, tol=1e-13))/(2*h)
        assert abs(fd-zSprime(ap, z)) < 1e-6*max(1., abs(fd))

    def test_chi_shift(self, smooth_wall):
        ap = ActionPoint(smooth_wall, 0.5, 1.)
        z = 0.3+2j
        assert S(ap.with_chi(2.), z)-S(ap, z)==pytest.approx(-np.log(z), rel=1e-10)

    def test_limit_log_phi(self, smooth_wall):
        ap = ActionPoint(smooth_wall, 0.5, 1.)
        z = 2.+1j
        expected = S(ap, z)+np.log(z)*(ap.chi-0.5*ap.height)
        assert limit_log_phi(smooth_wall, 0.5, z)==pytest.approx(expected, rel=1e-10)

    def test_real_axis(self, smooth_wall):
        with pytest.raises(BranchPoint):
            limit_log_phi(smooth_wall, 0.5, 2.)
