#---------------------------------------------------------------------------
# Correlation kernels
# - finite products Phi(z, t) of a lattice wall
# - exact finite-size kernel and determinantal correlations
# - incomplete beta kernel of the bulk and one-point densities
#---------------------------------------------------------------------------

import numpy as np
import pandas as pd
from tqdm import tqdm

from skewwall.sfun import ActionPoint, zSprime_limits, quad_gl
from skewwall.critical import classify, probe_tau
from skewwall.utils import (
    Dict,
    ZeroFactor,
    ContourPinch,
    ToleranceNotMet,
    PathThroughPole,
    NearBoundary,
)

CIRCLE_N = 512
CIRCLE_N_MAX = 16384
KERNEL_TOL = 1e-10
ZERO_TOL = 1e-14

#---------------------------------------------------------------------------
# types

class LatticePoint:
    """Centre (t, h) of a horizontal tile, t integer and h in Z/2."""
    def __init__(self, t, h):
        assert float(t)==int(t), "[Error] t must be an integer, got {}".format(t)
        assert float(2*h)==int(2*h), "[Error] h must be a half-integer, got {}".format(h)
        self.t = int(t)
        self.h = float(h)

    @classmethod
    def from_x(cls, lw, t, x):
        """Point of slice t carrying the particle x = mu_i - i."""
        return cls(t, x+0.5*lw.b(t))

    def x(self, lw):
        """Particle coordinate h - b(t)/2, refused when not an integer."""
        x = self.h-0.5*lw.b(self.t)
        if x!=np.round(x):
            raise ValueError("(t={}, h={}) is not a tile position of the wall: h - b(t)/2 = {}".format(self.t, self.h, x))
        return int(np.round(x))

    def __eq__(self, other):
        return isinstance(other, LatticePoint) and self.t==other.t and self.h==other.h

    def __hash__(self): return hash((self.t, self.h))

    def __repr__(self): return "LatticePoint(t={}, h={})".format(self.t, self.h)

class KernelEval:
    """Kernel value with the method that produced it and an error estimate."""
    def __init__(self, value, method, error_estimate=0.):
        assert error_estimate >= 0, "[Error] Negative error estimate."
        self.value = value
        self.method = method
        self.error_estimate = float(error_estimate)

    def __repr__(self):
        return "KernelEval({:.12g}, method={}, error={:.1e})".format(self.value, self.method, self.error_estimate)

#---------------------------------------------------------------------------
# finite products

def _factors(lw, t):
    m_minus = lw.d_minus[lw.d_minus < t]
    m_plus = lw.d_plus[lw.d_plus > t]
    return m_minus, m_plus

def finite_log_phi(lw, z, t, tol=ZERO_TOL):
    """ln Phi_-(z, t) - ln Phi_+(z, t), term by term principal logarithms.

    Phi_-(z, t) = prod_{m < t, m in D-} (1 - q^{-m}/z) and
    Phi_+(z, t) = prod_{m > t, m in D+} (1 - z q^m).

    Raises
    ------
    ZeroFactor
        One of the factors vanishes at z.
    """
    z = complex(z)
    q = lw.q
    m_minus, m_plus = _factors(lw, t)
    f_minus = 1-q**(-m_minus)/z
    f_plus = 1-z*q**m_plus
    if np.any(np.abs(f_minus) < tol) or np.any(np.abs(f_plus) < tol):
        raise ZeroFactor("a factor of Phi(z, {}) vanishes at z={}".format(t, z))
    return complex(np.sum(np.log(f_minus))-np.sum(np.log(f_plus)))

def phi(lw, z, t):
    """Phi(z, t) = Phi_-(z, t)/Phi_+(z, t), vectorized over z."""
    q = lw.q
    m_minus, m_plus = _factors(lw, t)
    z = np.asarray(z, dtype=complex)
    num = np.prod(1-(q**(-m_minus))[None,:]/z[...,None], axis=-1) if len(m_minus) else np.ones_like(z)
    den = np.prod(1-z[...,None]*(q**m_plus)[None,:], axis=-1) if len(m_plus) else np.ones_like(z)
    return num/den

#---------------------------------------------------------------------------
# finite kernel

class FiniteKernel:
    """Exact correlation kernel of the q^volume measure on a lattice wall.

    With A_j the Laurent coefficients of Phi(z, t1) on 0 < |z| < min_{m in D+, m > t1} q^{-m}
    and B_j those of 1/Phi(w, t2) on |w| > max_{m in D-, m < t2} q^{-m}:

        K = sum_{k >= 0} A_{x1+k+1} B_{-x2-k-1}       if t1 >= t2
        K = -sum_{k >= 0} A_{x1-k} B_{k-x2}           if t1 < t2

    x = h - b(t)/2 being the particle coordinates. The coefficients come from
    n-point trapezoid rules on circles of radius sqrt(L U), L and U being the
    pole moduli around slice t, and n doubles until the n/2n gap is below tol.

    Parameters
    ----------
    lw : skewwall.wall.LatticeWall
    tol : float, default=1e-10
    n0 : int, default=512
    n_max : int, default=16384
    """
    def __init__(self, lw, tol=KERNEL_TOL, n0=CIRCLE_N, n_max=CIRCLE_N_MAX):
        assert n0 >= 16 and n0%2==0, "[Error] Circle size must be even and at least 16."
        self.lw = lw
        self.tol = tol
        self.n0 = n0
        self.n_max = n_max
        self._cache = {}

    def window(self, t):
        """(L, U): largest pole modulus of 1/Phi(., t) inside, smallest pole modulus of Phi(., t) outside."""
        q = self.lw.q
        m_minus, m_plus = _factors(self.lw, t)
        L = q**(-m_minus.max()) if len(m_minus) else q**(-(t-0.5))
        U = q**(-m_plus.min()) if len(m_plus) else q**(-(t+0.5))
        if not L < U:
            raise ContourPinch("no circle separates the poles around slice t={} (L={}, U={})".format(t, L, U))
        return L, U

    def coefficients(self, t, n, inverse=False):
        """Scaled Laurent coefficients c_j r^j, j = -n/2..n/2-1, of Phi(., t) (or its inverse), and log r."""
        key = (t, n, inverse)
        if key not in self._cache:
            L, U = self.window(t)
            log_r = 0.5*(np.log(L)+np.log(U))
            z = np.exp(log_r)*np.exp(2j*np.pi*np.arange(n)/n)
            vals = phi(self.lw, z, t)
            if inverse: vals = 1./vals
            self._cache[key] = (np.fft.fftshift(np.fft.fft(vals))/n, log_r)
        return self._cache[key]

    def _value(self, x1, t1, x2, t2, n):
        a, la = self.coefficients(t1, n)
        b, lb = self.coefficients(t2, n, inverse=True)
        half = n//2
        if t1 >= t2:
            k = np.arange(0, max(0, min(half-x1-1, half-x2)))
            ia, ib = x1+k+1, -x2-k-1
            log_w = -(x1+k+1)*la+(x2+k+1)*lb
            sign = 1.
        else:
            k = np.arange(0, max(0, min(half+x1+1, half+x2)))
            ia, ib = x1-k, k-x2
            log_w = -(x1-k)*la-(k-x2)*lb
            sign = -1.
        ok = (ia >= -half) & (ia < half) & (ib >= -half) & (ib < half)
        if not np.any(ok): return 0j
        terms = a[ia[ok]+half]*b[ib[ok]+half]*np.exp(log_w[ok])
        return sign*np.sum(terms)

    def __call__(self, p1, p2):
        lw = self.lw
        x1, x2 = p1.x(lw), p2.x(lw)
        n = self.n0
        prev = self._value(x1, p1.t, x2, p2.t, n)
        while True:
            n2 = 2*n
            cur = self._value(x1, p1.t, x2, p2.t, n2)
            err = abs(cur-prev)
            if err <= self.tol:
                return KernelEval(cur, 'circle-quadrature', err)
            if n2 >= self.n_max:
                raise ToleranceNotMet("kernel gap {} above {} at n={}".format(err, self.tol, n2))
            n, prev = n2, cur

    def matrix(self, points):
        """Kernel matrix K(p_i, p_j) and the largest entry error estimate."""
        k = len(points)
        M = np.zeros((k, k), dtype=complex)
        err = 0.
        for i, p in enumerate(points):
            for j, p2 in enumerate(points):
                ev = self(p, p2)
                M[i, j] = ev.value
                err = max(err, ev.error_estimate)
        return M, err

def finite_kernel(lw, p1, p2, **kwargs):
    """K_{lambda,q}(p1, p2) of the lattice wall lw, see FiniteKernel."""
    return FiniteKernel(lw, **kwargs)(p1, p2)

def correlations(lw, U, kernel=None, return_error=False):
    """Probability of horizontal tiles at every point of U, det K(p_i, p_j).

    Parameters
    ----------
    lw : LatticeWall
    U : sequence of LatticePoint
        At most 8 points. The empty set gives 1.
    kernel : FiniteKernel, default=None
        Reused between calls to keep the coefficient cache.
    return_error : bool, default=False
    """
    U = list(U)
    assert len(U) <= 8, "[Error] At most 8 points, got {}".format(len(U))
    if len(U)==0:
        return (1., 0.) if return_error else 1.
    if kernel is None: kernel = FiniteKernel(lw)
    M, err = kernel.matrix(U)
    det = np.linalg.det(M)
    val = float(det.real)
    # first-order error of the determinant
    bound = err*len(U)*max(1., np.max(np.abs(M)))**(len(U)-1)
    return (val, bound) if return_error else val

#---------------------------------------------------------------------------
# bulk kernel

def beta_kernel(z_cr, tau, dt, dh, tol=1e-12, pole_tol=1e-10, x0=None):
    """Incomplete beta kernel K_{tau,chi}(dt, dh).

    Integral of (1 - e^{-tau} z)^dt z^{-dh-dt/2-1} dz/(2 pi i) along
    conj(z_cr) -> x0 -> z_cr with x0 = min(1, e^tau (1 - 1e-3))/2 when
    dt >= 0 and x0 = -1 otherwise, unless x0 is given. The value does not
    depend on x0 as long as the path keeps 0 and e^tau on the same sides.

    Raises
    ------
    PathThroughPole
        A leg of the path passes too close to 0 or e^tau.
    """
    z_cr = complex(z_cr)
    assert z_cr.imag > 0, "[Error] z_cr must be in the upper half plane."
    s = dh+0.5*dt
    assert float(s)==int(s), "[Error] dh + dt/2 must be an integer, got {}".format(s)
    s = int(s)
    e_tau = np.exp(tau)
    if x0 is None: x0 = 0.5*min(1., e_tau*(1-1e-3)) if dt >= 0 else -1.
    legs = ((z_cr.conjugate(), complex(x0)), (complex(x0), z_cr))
    for a, b in legs:
        for pole in (0., e_tau):
            d = b-a
            u = np.clip(((pole-a)*d.conjugate()).real/abs(d)**2, 0., 1.)
            if abs(a+u*d-pole) < pole_tol*max(1., abs(pole)):
                raise PathThroughPole("path leg {} -> {} passes through {}".format(a, b, pole))

    def integrand(z):
        return (1-z/e_tau)**dt*z**(-s-1)/(2j*np.pi)

    total, err = 0j, 0.
    for a, b in legs:
        d = b-a
        val, e = quad_gl(lambda u: integrand(a+d*u)*d, 0., 1., tol=tol)
        total += val
        err += e
    return KernelEval(total, 'beta-contour', err)

def frozen_density(ap):
    """1 if max(z S'(0), z S'(infinity)) > 0, else 0."""
    at_zero, at_inf = zSprime_limits(ap)
    return 1. if max(at_zero, at_inf) > 0 else 0.

def density_phase(w, tau, chi, **kwargs):
    """(density, phase tag) at (tau, chi); tau on a corner is probed one-sidedly."""
    V = w.corners
    t = probe_tau(w, float(tau))
    ap = ActionPoint(w, t, chi, strict=V[0] < t < V[-1])
    ph = classify(ap, **kwargs)
    if ph.liquid:
        return float(np.clip(beta_kernel(ph.z_cr, t, 0, 0).value.real, 0., 1.)), ph.tag
    return frozen_density(ap), ph.tag

def density(w, tau, chi, **kwargs):
    """One-point density of horizontal tiles at (tau, chi).

    Liquid points give arg(z_cr)/pi through the beta kernel, frozen points
    0 or 1 by frozen_density.

    Raises
    ------
    NearBoundary
        (tau, chi) is on the frozen boundary within tolerance.
    """
    return density_phase(w, tau, chi, **kwargs)[0]

def density_grid(w, taus, chis, verbose=True, **kwargs):
    """Density on the grid taus x chis.

    Points on the boundary within tolerance are nudged by 1e-7 in chi once,
    then reported with phase 'boundary' and a NaN density.

    Returns
    -------
    df : pandas.DataFrame
        Columns tau, chi, density, phase.
    """
    rows = []
    pts = [(t, c) for t in taus for c in chis]
    for tau, chi in tqdm(pts, disable=not verbose, desc="density"):
        row = Dict(tau=float(tau), chi=float(chi), density=np.nan, phase='boundary')
        for shift in (0., 1e-7):
            try:
                row.density, row.phase = density_phase(w, tau, chi+shift, **kwargs)
                break
            except NearBoundary:
                continue
        rows.append(row)
    return pd.DataFrame(rows, columns=['tau', 'chi', 'density', 'phase'])

#---------------------------------------------------------------------------
