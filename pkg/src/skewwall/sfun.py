#---------------------------------------------------------------------------
# Action function S_{tau,chi}(z) and its derivatives
# - T(z) and its derivatives
# - closed form of z S'(z), complex and on the real axis (x + i0)
# - S(z) and the limit of r ln Phi by adaptive Gauss-Legendre quadrature
#---------------------------------------------------------------------------

from math import factorial

import numpy as np
from numpy.polynomial.legendre import leggauss

from skewwall.wall import BackWall, eval_wall
from skewwall.utils import (
    PoleAt,
    BranchPoint,
    QuadratureFailure,
)

POLE_TOL = 1e-12
QUAD_TOL = 1e-10

#---------------------------------------------------------------------------
# action point

def action_pieces(w, tau):
    """Logarithmic pieces of z S'(z) at tau.

    z S'(z) = sum_k coef_k * Log((z e^{-hi_k} - 1)/(z e^{-lo_k} - 1)) + const.
    Pieces left of tau carry -(1+beta)/2 and pieces right of tau (1-beta)/2.
    When tau leaves [V_0, V_n] the box extension adds (tau, V_0) with slope -1
    or (V_n, tau) with slope +1. Pieces with a zero coefficient are dropped.

    Returns
    -------
    lo, hi, coef : numpy.ndarray
    left : numpy.ndarray of bool
        True for pieces left of tau.
    """
    V = w.corners
    beta = w.slopes
    pieces = []
    if tau < V[0]:
        pieces.append((tau, V[0], 1., False))
    for i in range(w.n):
        a, b, s = V[i], V[i+1], beta[i]
        if a < tau:
            c = -0.5*(1+s)
            if c!=0: pieces.append((a, min(b, tau), c, True))
        if b > tau:
            c = 0.5*(1-s)
            if c!=0: pieces.append((max(a, tau), b, c, False))
    if tau > V[-1]:
        pieces.append((V[-1], tau, -1., True))
    if len(pieces)==0:
        return np.zeros(0), np.zeros(0), np.zeros(0), np.zeros(0, dtype=bool)
    lo, hi, coef, left = map(np.array, zip(*pieces))
    return lo.astype(float), hi.astype(float), coef.astype(float), left.astype(bool)

class ActionPoint:
    """Point (tau, chi) of the rescaled plane, attached to a wall.

    Parameters
    ----------
    wall : skewwall.wall.BackWall
    tau : float
    chi : float
    strict : bool, default=True
        Require tau strictly inside a segment of the wall. The frozen boundary
        uses strict=False, tau may then be a corner or lie outside the wall.
    """
    def __init__(self, wall, tau, chi, strict=True):
        self.wall = wall
        self.tau = float(tau)
        self.chi = float(chi)
        self.j = wall.segment_index(self.tau) if strict else None
        self.lo, self.hi, self.coef, self.left = action_pieces(wall, self.tau)
        # affine part of z S'(z)
        self.c0 = -self.chi - 0.5*self.tau + 0.5*(wall.anchor+wall.corners[0])

    @property
    def beta(self):
        """Slope of the segment containing tau."""
        if self.j is None:
            return self.wall.slope_at(self.tau)[1]
        return float(self.wall.slopes[self.j-1])

    @property
    def height(self):
        """V(tau), box-extended."""
        return eval_wall(self.wall, self.tau)

    def with_chi(self, chi):
        return ActionPoint(self.wall, self.tau, chi, strict=self.j is not None)

    def __repr__(self):
        return "ActionPoint(tau={}, chi={})".format(self.tau, self.chi)

def _as_wall(w):
    return w.wall if isinstance(w, ActionPoint) else w

def _bcast(arr, z):
    return arr.reshape(arr.shape+(1,)*np.ndim(z))

#---------------------------------------------------------------------------
# T(z)

def T(w, z, order=0, tol=POLE_TOL):
    """order-th derivative of T(z) = sum_i c_i/(z - e^{V_i}).

    Parameters
    ----------
    w : BackWall or ActionPoint
    z : complex or array of complex
    order : int, default=0
    tol : float, default=1e-12
        Relative distance to a pole below which PoleAt is raised.

    Returns
    -------
    value : complex or numpy.ndarray
        Same shape as z. Real input gives real output.
    """
    w = _as_wall(w)
    assert order >= 0, "[Error] Derivative order must be nonnegative."
    z_arr = np.asarray(z)
    dtype = np.result_type(z_arr, float)
    c = w.jumps()
    keep = c!=0
    poles = np.exp(w.corners[keep])
    c = c[keep]
    d = z_arr[None,...] - _bcast(poles, z_arr)
    close = np.abs(d) < tol*_bcast(np.maximum(1., poles), z_arr)
    if np.any(close):
        i = int(np.nonzero(np.any(close.reshape(len(poles), -1), axis=1))[0][0])
        raise PoleAt("z is on the pole e^V={} of T".format(poles[i]), where=float(np.log(poles[i])))
    k = order
    out = np.sum(_bcast(c, z_arr)*((-1)**k*factorial(k))/d**(k+1), axis=0).astype(dtype)
    if out.ndim==0: return out[()]
    return out

#---------------------------------------------------------------------------
# z S'(z)

def _log_terms(ap, z, w, tol):
    """num = z e^{-hi} - 1 and den = z e^{-lo} - 1 for every piece."""
    if w is not None:
        w_arr = np.asarray(w, dtype=complex)
        num = np.expm1(_bcast(ap.tau-ap.hi, w_arr)) + _bcast(np.exp(ap.tau-ap.hi), w_arr)*w_arr
        den = np.expm1(_bcast(ap.tau-ap.lo, w_arr)) + _bcast(np.exp(ap.tau-ap.lo), w_arr)*w_arr
    else:
        z_arr = np.asarray(z, dtype=complex)
        num = z_arr*_bcast(np.exp(-ap.hi), z_arr) - 1
        den = z_arr*_bcast(np.exp(-ap.lo), z_arr) - 1
    if np.any(np.abs(num) < tol) or np.any(np.abs(den) < tol):
        raise BranchPoint("z is on a branch point of z S'(z)")
    return num, den

def zSprime(ap, z, w=None, tol=POLE_TOL):
    """Closed form of z S'(z) with principal logarithms.

    Parameters
    ----------
    ap : ActionPoint
    z : complex or array of complex
        Ignored when w is given.
    w : complex or array of complex, default=None
        Local coordinate w = z e^{-tau} - 1. Keeps full precision when z is
        close to e^tau.
    tol : float, default=1e-12

    Returns
    -------
    value : complex or numpy.ndarray
    """
    num, den = _log_terms(ap, z, w, tol)
    ratio = num/den
    on_cut = (ratio.real < 0) & (np.abs(ratio.imag) <= tol*np.abs(ratio))
    if np.any(on_cut):
        raise BranchPoint("z lies on a cut of z S'(z)")
    out = np.sum(_bcast(ap.coef, np.asarray(z if w is None else w))*np.log(ratio), axis=0) + ap.c0
    if np.ndim(out)==0: return complex(out)
    return out

def zSprime_real(ap, x, tol=POLE_TOL):
    """Boundary value z S'(x + i0) for real x.

    The real part is sum coef*log|ratio|, the imaginary part is
    pi * sum of the coefficients of the pieces whose cut contains x.
    """
    x_arr = np.asarray(x, dtype=float)
    num = x_arr*_bcast(np.exp(-ap.hi), x_arr) - 1
    den = x_arr*_bcast(np.exp(-ap.lo), x_arr) - 1
    if np.any(np.abs(num) < tol) or np.any(np.abs(den) < tol):
        raise BranchPoint("x is a branch point of z S'(z)")
    coef = _bcast(ap.coef, x_arr)
    re = np.sum(coef*np.log(np.abs(num/den)), axis=0) + ap.c0
    inside = (x_arr > _bcast(np.exp(ap.lo), x_arr)) & (x_arr < _bcast(np.exp(ap.hi), x_arr))
    im = np.pi*np.sum(coef*inside, axis=0)
    out = re + 1j*im
    if np.ndim(out)==0: return complex(out)
    return out

def zSprime_limits(ap):
    """Real limits of z S'(z) at z = 0 and z = infinity."""
    w = ap.wall
    at_zero = ap.c0
    at_inf = -ap.chi + 0.5*(ap.tau + w.heights[-1] - w.corners[-1])
    return at_zero, at_inf

def zSprime2(ap, z, tol=POLE_TOL):
    """d/dz of z S'(z), that is T(z) - 1/(z - e^tau)."""
    z_arr = np.asarray(z)
    d = z_arr - np.exp(ap.tau)
    if np.any(np.abs(d) < tol*max(1., np.exp(ap.tau))):
        raise PoleAt("z is on the pole e^tau", where=ap.tau)
    return T(ap.wall, z, 0, tol) - 1./d

def zSprime3(ap, z, tol=POLE_TOL):
    """d^2/dz^2 of z S'(z), that is T'(z) + 1/(z - e^tau)^2."""
    z_arr = np.asarray(z)
    d = z_arr - np.exp(ap.tau)
    if np.any(np.abs(d) < tol*max(1., np.exp(ap.tau))):
        raise PoleAt("z is on the pole e^tau", where=ap.tau)
    return T(ap.wall, z, 1, tol) + 1./d**2

#---------------------------------------------------------------------------
# quadrature

_GL = {}

def _gl_rule(n):
    if n not in _GL: _GL[n] = leggauss(n)
    return _GL[n]

def quad_gl(f, a, b, tol=QUAD_TOL, n=16, max_depth=50):
    """Adaptive Gauss-Legendre quadrature of f on [a, b] by bisection.

    An interval is accepted when its n-point value and the sum of its two
    halves agree within tol*max(|I|, 1e-300), I being the running estimate
    of the whole integral.

    Parameters
    ----------
    f : callable
        Vectorized integrand, may be complex valued.
    a, b : float
    tol : float, default=1e-10
    n : int, default=16
    max_depth : int, default=50

    Returns
    -------
    value : complex
    error : float
        Sum of the local error estimates.
    """
    x, wts = _gl_rule(n)
    def rule(lo, hi):
        xm, xr = 0.5*(lo+hi), 0.5*(hi-lo)
        return xr*np.sum(wts*f(xm+xr*x))

    if a==b: return 0j, 0.
    whole = rule(a, b)
    scale = max(abs(whole), 1e-300)
    stack = [(a, b, whole, 0)]
    total, error = 0j, 0.
    while stack:
        lo, hi, val, depth = stack.pop()
        mid = 0.5*(lo+hi)
        left, right = rule(lo, mid), rule(mid, hi)
        err = abs(left+right-val)
        if err <= tol*scale or depth >= max_depth:
            if err > tol*scale:
                raise QuadratureFailure(
                    "quadrature on [{}, {}] stalled at depth {}".format(lo, hi, depth),
                    error_estimate=err)
            total += left+right
            error += err
        else:
            stack.append((mid, hi, right, depth+1))
            stack.append((lo, mid, left, depth+1))
    return complex(total), error

#---------------------------------------------------------------------------
# S(z) and the limit of r ln Phi

def _check_off_cuts(z, tol):
    z = complex(z)
    if abs(z.imag) <= tol*max(1., abs(z)):
        raise BranchPoint("z={} is on the real axis, where S is cut".format(z))

def _integrals(w, tau, z, tol):
    """sum over the pieces of -coef * integral of Log(1 - e^M/z) (left) or Log(1 - e^{-M} z) (right)."""
    lo, hi, coef, left = action_pieces(w, tau)
    total = 0j
    for a, b, c, is_left in zip(lo, hi, coef, left):
        if is_left:
            f = lambda M: np.log(1-np.exp(M)/z)
        else:
            f = lambda M: np.log(1-np.exp(-M)*z)
        val, _ = quad_gl(f, a, b, tol=tol)
        total += -c*val
    return total

def limit_log_phi(w, tau, z, tol=QUAD_TOL, pole_tol=POLE_TOL):
    """Limit of r ln Phi_b(z, t) as r -> 0 with r t -> tau.

    Equals S_{tau,chi}(z) without its -ln(z)(chi - V(tau)/2) term. The box
    extension segments carry zero weight and do not contribute.
    """
    _check_off_cuts(z, pole_tol)
    return _integrals(_as_wall(w), float(tau), complex(z), tol)

def S(ap, z, tol=QUAD_TOL, pole_tol=POLE_TOL):
    """Action S_{tau,chi}(z) by per-piece adaptive quadrature.

    Examples
    --------
    >>> ap = ActionPoint(BackWall([-1,0,1], [-1,1]), 0.3, 2.)
    >>> bool(abs(S(ap.with_chi(3.), 1+1j) - S(ap, 1+1j) + np.log(1+1j)) < 1e-12)
    True
    """
    z = complex(z)
    _check_off_cuts(z, pole_tol)
    return _integrals(ap.wall, ap.tau, z, tol) - np.log(z)*(ap.chi-0.5*ap.height)

#---------------------------------------------------------------------------
