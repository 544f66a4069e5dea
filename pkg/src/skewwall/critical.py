#---------------------------------------------------------------------------
# Non-real critical points of S_{tau,chi}
# - exact root count on the upper half plane (argument principle along the
#   real axis) and a sampled rectangle count as cross-check
# - Newton in log(z e^{-tau} - 1) with homotopy in chi
# - large-chi asymptotics and corner scaling solutions
# - phase classification of single points and grids
#---------------------------------------------------------------------------

import copy

import numpy as np
import pandas as pd
from numba import njit
from numpy.polynomial import polynomial as P
from tqdm import tqdm

from skewwall.sfun import (
    ActionPoint,
    T,
    zSprime,
    zSprime_real,
    zSprime_limits,
)
from skewwall.wall import is_lattice_slope
from skewwall.utils import (
    Dict,
    BranchPoint,
    PoleAt,
    CertificationMismatch,
    NearBoundary,
    LatticeSlopeSegment,
    NoConvergence,
    DomainViolation,
)

ROOT_TOL = 1e-10
NONREAL_TOL = 1e-8
NEAR_TOL = 1e-9
CHI_BIG = 20.
CHI_STEP = 0.25

#---------------------------------------------------------------------------
# phase

class Phase:
    """Classification of a point (tau, chi).

    tag is 'liquid' or 'frozen'. A liquid phase keeps the upper critical point
    z_cr and the residual |z S'(z_cr)|. count is the number of non-real roots
    of z S'(z) in the upper half plane.
    """
    def __init__(self, tag, z_cr=None, residual=None, count=None):
        assert tag in ('liquid', 'frozen'), "[Error] Unknown phase tag: {}".format(tag)
        self.tag = tag
        self.z_cr = z_cr
        self.residual = residual
        self.count = count

    @property
    def liquid(self): return self.tag=='liquid'

    def __repr__(self):
        if self.liquid:
            return "Phase(liquid, z_cr={:.6g}, residual={:.2e})".format(self.z_cr, self.residual)
        return "Phase(frozen)"

#---------------------------------------------------------------------------
# real-axis structure of z S'(z)

def branch_points(ap):
    """Real branch points e^M of z S'(z) and their log coefficients kappa.

    z S'(z) ~ kappa * log(z - e^M) near e^M, so kappa is also the residue of
    d/dz z S'(z). kappa is c_i at a corner and -1 at e^tau.
    """
    kappa = {}
    for lo, hi, c in zip(ap.lo, ap.hi, ap.coef):
        kappa[hi] = kappa.get(hi, 0.)+c
        kappa[lo] = kappa.get(lo, 0.)-c
    M = sorted(m for m,k in kappa.items() if abs(k) > 1e-14)
    return np.exp(np.array(M)), np.array([kappa[m] for m in M])

def stationary_points(ap):
    """Real zeros of d/dz z S'(z) = sum kappa/(x - p), polished by Newton."""
    poles, kappa = branch_points(ap)
    if len(poles) < 2: return np.zeros(0)
    scale = poles.max()
    y = poles/scale
    num = np.zeros(1)
    for i in range(len(y)):
        num = P.polyadd(num, kappa[i]*P.polyfromroots(np.delete(y, i)))
    num = P.polytrim(num, tol=1e-14*np.max(np.abs(num)))
    if len(num) < 2: return np.zeros(0)
    cand = P.polyroots(num)
    cand = cand[np.abs(cand.imag) <= 1e-6*np.maximum(1., np.abs(cand))].real*scale

    out = []
    for x in cand:
        for _ in range(20):
            d = x-poles
            if np.any(d==0): break
            g = np.sum(kappa/d)
            dg = -np.sum(kappa/d**2)
            if dg==0: break
            step = g/dg
            x = x-step
            if abs(step) <= 1e-15*max(1., abs(x)): break
        d = np.abs(x-poles)
        if d.min() <= 1e-12*max(1., abs(x)): continue
        if abs(np.sum(kappa/(x-poles)))*d.min() > 1e-8: continue
        out.append(x)
    return np.unique(np.round(np.array(out), 14))

def certify(ap, near_tol=NEAR_TOL):
    """Exact number of roots of z S'(z) in the upper half plane.

    The argument principle is applied to the upper half plane. On the real
    axis z S'(x + i0) = R(x) + i I where I is constant between consecutive
    branch points, so an interval with I != 0 contributes
    atan2(I, R_end) - atan2(I, R_start) and an interval with I = 0 contributes
    -pi for every real root, the contour passing above it. R tends to
    -inf*sign(kappa) at a branch point and to z S'(infinity) at both infinities;
    the large arc contributes nothing since z S'(z) tends to a real constant.

    Returns
    -------
    count : int

    Raises
    ------
    NearBoundary
        z S'(infinity) is zero or a real stationary value is zero within near_tol
        (double real root).
    CertificationMismatch
        The total change of argument is not a multiple of 2 pi.
    """
    poles, kappa = branch_points(ap)
    _, f_inf = zSprime_limits(ap)
    if abs(f_inf) < near_tol:
        raise NearBoundary("z S'(infinity) = {} vanishes".format(f_inf))
    stat = stationary_points(ap)

    edges = np.concatenate(([-np.inf], poles, [np.inf]))
    r_left = np.concatenate(([f_inf], -np.sign(kappa)*np.inf))
    r_right = np.concatenate((-np.sign(kappa)*np.inf, [f_inf]))
    total = 0.
    for k in range(len(edges)-1):
        a, b = edges[k], edges[k+1]
        if np.isinf(a): mid = b-1. if b > 0 else b-abs(b)
        elif np.isinf(b): mid = 2*a if a > 0 else a+1.
        else: mid = 0.5*(a+b)
        im = zSprime_real(ap, mid).imag
        if abs(im) > 1e-12:
            total += np.arctan2(im, r_right[k])-np.arctan2(im, r_left[k])
        else:
            inner = stat[(stat > a) & (stat < b)]
            values = [r_left[k]]
            for x in inner:
                v = zSprime_real(ap, x).real
                if abs(v) < near_tol:
                    raise NearBoundary("double real root of z S'(z) at x={}".format(x))
                values.append(v)
            values.append(r_right[k])
            signs = np.sign(values)
            total += -np.pi*np.count_nonzero(signs[1:]!=signs[:-1])
    n = total/(2*np.pi)
    if abs(n-round(n)) > 1e-6:
        raise CertificationMismatch("change of argument {} is not a multiple of 2 pi".format(total))
    return int(round(n))

@njit(cache=True)
def _winding(re, im):
    """Winding number of a closed sampled path around 0."""
    total = 0.
    for i in range(1, len(re)):
        cross = re[i-1]*im[i]-im[i-1]*re[i]
        dot = re[i-1]*re[i]+im[i-1]*im[i]
        total += np.arctan2(cross, dot)
    return total/(2*np.pi)

def _clustered_edge(a, b, poles, n):
    """Points of [a, b] refined geometrically around the poles."""
    pts = [np.linspace(a, b, n)]
    for p in poles:
        if a < p < b:
            offs = np.geomspace(1e-9, 1., n//4)*max(1e-3, min(p-a, b-p))
            pts += [p-offs, p+offs]
    x = np.unique(np.concatenate(pts))
    return x[(x>=a) & (x<=b)]

def winding_count(ap, height=None, y0=1e-8, n=2000):
    """Number of roots of z S'(z) inside a rectangle of the upper half plane.

    The rectangle covers Re z in [x_min - d, x_max + d], Im z in [y0*scale, height],
    where x_min, x_max are the extreme branch points. The boundary is sampled
    with refinement near the branch points and the winding number of z S'(z)
    is accumulated step by step. Used as a cross-check of certify on points
    whose roots keep away from the real axis.
    """
    poles, _ = branch_points(ap)
    scale = poles.max()
    d = 0.5*scale
    x0, x1 = min(poles.min(), 0.)-d, poles.max()+d
    if height is None: height = 4*scale
    y_low = y0*scale
    bottom = _clustered_edge(x0, x1, poles, n)+1j*y_low
    right = x1+1j*np.linspace(y_low, height, n)
    top = np.linspace(x1, x0, n)+1j*height
    left = x0+1j*np.linspace(height, y_low, n)
    path = np.concatenate((bottom, right[1:], top[1:], left[1:]))
    f = zSprime(ap, path)
    return int(round(_winding(f.real.copy(), f.imag.copy())))

#---------------------------------------------------------------------------
# large chi

def _lattice_check(ap):
    if ap.j is None or is_lattice_slope(ap.beta):
        raise LatticeSlopeSegment("tau={} lies on a segment with slope {}".format(ap.tau, ap.beta))

def anchor_term(w):
    return 0.25*(w.corners[0]+w.anchor+w.heights[-1]-w.corners[-1])

def asymptotic_eps(ap):
    """eps of the large-chi root z = e^{tau - eps}, see asymptotic_root."""
    w = ap.wall
    c = w.jumps()
    keep = c!=0
    mod = np.exp(-ap.chi+anchor_term(w)+np.sum(c[keep]*np.log(np.abs(2*np.sinh(0.5*(ap.tau-w.corners[keep]))))))
    return mod*np.exp(-1j*np.pi*0.5*(1+ap.beta))

def asymptotic_root(ap):
    """Upper critical point for large chi, z = e^{tau - eps}.

    |eps| = e^{-chi} prod_i |2 sinh((tau - V_i)/2)|^{c_i} e^{(V_0 + a + V(V_n) - V_n)/4}
    and arg eps = -pi (1 + beta_j)/2, so that Im z > 0. The relative error
    is O(e^{-chi}).

    Raises
    ------
    LatticeSlopeSegment
        The segment of tau has slope +-1, there is no such root.
    """
    _lattice_check(ap)
    return complex(np.exp(ap.tau-asymptotic_eps(ap)))

def _newton(ap, ell, root_tol, maxiter=60):
    """Newton on g(l) = z S'(z), z = e^tau (1 + e^l), dg/dl = w e^tau T(z) - 1.

    Returns l or None when the iteration leaves the upper half plane
    (0 < Im l < pi) or does not converge.
    """
    et = np.exp(ap.tau)
    for _ in range(maxiter):
        if not (0. < ell.imag < np.pi): return None
        w = np.exp(ell)
        try:
            g = zSprime(ap, None, w=w)
            dg = w*et*T(ap.wall, et*(1+w))-1.
        except (BranchPoint, PoleAt):
            return None
        if dg==0: return None
        step = g/dg
        # cap the step, the map is close to g = -l + const
        if abs(step) > 2.: step = 2.*step/abs(step)
        ell = ell-step
        if abs(g) < root_tol and abs(step) < 1e-8:
            return ell
    if 0. < ell.imag < np.pi:
        w = np.exp(ell)
        try:
            if abs(zSprime(ap, None, w=w)) < root_tol: return ell
        except (BranchPoint, PoleAt):
            pass
    return None

def _with_chi(ap, chi):
    out = copy.copy(ap)
    out.c0 = ap.c0+ap.chi-chi
    out.chi = float(chi)
    return out

def homotopy_root(ap, root_tol=ROOT_TOL, chi_big=CHI_BIG, chi_step=CHI_STEP, verbose=False):
    """Upper critical point continued from the large-chi asymptotics.

    Starts at chi_seed = max(chi, chi_big) from asymptotic_root and descends to
    ap.chi with step chi_step, halving the step whenever Newton fails.

    Returns
    -------
    ell : complex or None
        log(z e^{-tau} - 1) of the root.
    """
    _lattice_check(ap)
    chi = max(ap.chi, chi_big)
    cur = _with_chi(ap, chi)
    ell = _newton(cur, np.log(np.expm1(-asymptotic_eps(cur))), root_tol)
    if ell is None:
        if verbose: print("[Warning] Newton failed at the homotopy seed chi={}".format(chi))
        return None
    step = chi_step
    while chi > ap.chi:
        nxt = max(ap.chi, chi-step)
        cand = _newton(_with_chi(ap, nxt), ell, root_tol)
        if cand is None:
            step /= 2.
            if step < 1e-9:
                if verbose: print("[Warning] Homotopy stalled at chi={}".format(chi))
                return None
            continue
        ell, chi = cand, nxt
    return ell

def _multistart(ap, root_tol):
    """Newton from a polar grid of seeds and from seeds around every branch point."""
    et = np.exp(ap.tau)
    seeds = [np.log(r)+1j*th for r in np.geomspace(1e-8, 1e4, 25) for th in np.linspace(0.05, 0.95, 7)*np.pi]
    poles, _ = branch_points(ap)
    for p in poles:
        for rho in (1e-6, 1e-3, 1e-1):
            for th in (0.25, 0.5, 0.75):
                wv = p/et-1+(p/et)*rho*np.exp(1j*np.pi*th)
                if wv.imag > 0: seeds.append(np.log(wv))
    for s in seeds:
        ell = _newton(ap, complex(s), root_tol)
        if ell is not None:
            return ell
    return None

def relative_imag(ap, z):
    """Im z over the distance from z to the nearest real branch point."""
    poles, _ = branch_points(ap)
    return abs(z.imag)/np.min(np.abs(z-poles))

def locate_root(ap, root_tol=ROOT_TOL, chi_big=CHI_BIG, chi_step=CHI_STEP, verbose=False):
    """Upper root of z S'(z) by homotopy, or by multi-start when the homotopy
    is not available or fails. Returns (z, residual) or (None, None)."""
    ell = None
    if ap.j is not None and not is_lattice_slope(ap.beta):
        ell = homotopy_root(ap, root_tol, chi_big, chi_step, verbose)
    if ell is None:
        ell = _multistart(ap, root_tol)
    if ell is None:
        return None, None
    w = np.exp(ell)
    z = complex(np.exp(ap.tau)*(1+w))
    return z, float(abs(zSprime(ap, None, w=w)))

#---------------------------------------------------------------------------
# classification

def classify(ap, root_tol=ROOT_TOL, nonreal_tol=NONREAL_TOL, near_tol=NEAR_TOL,
    chi_big=CHI_BIG, chi_step=CHI_STEP, verbose=False):
    """Liquid or frozen phase of the point ap.

    The exact count of certify decides the phase; Newton only locates the root.
    In the frozen case a Newton run from the asymptotic seed must not find a
    non-real root.

    Raises
    ------
    CertificationMismatch
        The count is not 0 or 1, or Newton disagrees with it.
    NearBoundary
        The point is on the frozen boundary within tolerance.
    """
    count = certify(ap, near_tol)
    if count not in (0, 1):
        raise CertificationMismatch("{} roots of z S'(z) in the upper half plane at {}".format(count, ap))
    if count==1:
        z, res = locate_root(ap, root_tol, chi_big, chi_step, verbose)
        if z is None:
            raise CertificationMismatch("one root counted at {} but Newton found none".format(ap))
        if relative_imag(ap, z) <= nonreal_tol:
            raise NearBoundary("critical point {} is real within tolerance".format(z))
        return Phase('liquid', z, res, count)
    if ap.j is not None and not is_lattice_slope(ap.beta):
        w0 = np.expm1(-asymptotic_eps(ap))
        if w0.imag > 0:
            ell = _newton(ap, np.log(w0), root_tol)
            if ell is not None:
                z = complex(np.exp(ap.tau)*(1+np.exp(ell)))
                if relative_imag(ap, z) > nonreal_tol:
                    raise CertificationMismatch("no root counted at {} but Newton converged to {}".format(ap, z))
    return Phase('frozen', count=0)

def critical_points(ap, **kwargs):
    """Non-real critical points of S: [z_cr, conj(z_cr)] when liquid, [] when frozen."""
    ph = classify(ap, **kwargs)
    if ph.liquid: return [ph.z_cr, ph.z_cr.conjugate()]
    return []

def probe_tau(w, tau, rel=1e-6):
    """tau moved off a corner by rel times the length of the segment on its right."""
    V = w.corners
    hit = np.nonzero(V==tau)[0]
    if len(hit)==0: return tau
    i = int(hit[0])
    if i < w.n: return tau+rel*(V[i+1]-V[i])
    return tau-rel*(V[i]-V[i-1])

def classify_grid(w, taus, chis, verbose=True, **kwargs):
    """Phase of every point of the grid taus x chis.

    tau values on a corner are probed at a one-sided offset. Points outside
    [V_0, V_n] use the box extension. Points on the boundary within tolerance
    get the phase 'boundary', certification failures 'mismatch'.

    Returns
    -------
    df : pandas.DataFrame
        Columns tau, chi, phase, count, z_re, z_im.
    """
    rows = []
    V = w.corners
    pts = [(t, c) for t in taus for c in chis]
    for tau, chi in tqdm(pts, disable=not verbose, desc="classify"):
        t = probe_tau(w, float(tau))
        strict = V[0] < t < V[-1]
        ap = ActionPoint(w, t, chi, strict=strict)
        row = Dict(tau=float(tau), chi=float(chi), phase='frozen', count=0, z_re=np.nan, z_im=np.nan)
        try:
            ph = classify(ap, **kwargs)
            row.phase = ph.tag
            row.count = ph.count
            if ph.liquid:
                row.z_re, row.z_im = ph.z_cr.real, ph.z_cr.imag
        except NearBoundary:
            row.phase, row.count = 'boundary', np.nan
        except CertificationMismatch as e:
            if verbose: print("[Warning]", e)
            row.phase, row.count = 'mismatch', np.nan
        rows.append(row)
    return pd.DataFrame(rows, columns=['tau', 'chi', 'phase', 'count', 'z_re', 'z_im'])

#---------------------------------------------------------------------------
# corners

class CornerScaling:
    """Solutions s of p = e^{+-i pi (1+beta_prev)/2} (s - sign_delta)^kappa / s, kappa = (beta_next - beta_prev)/2."""
    def __init__(self, p, beta_prev, beta_next, sign_delta, s_solutions):
        self.p = p
        self.beta_prev = beta_prev
        self.beta_next = beta_next
        self.sign_delta = sign_delta
        self.s_solutions = s_solutions

    def __repr__(self):
        return "CornerScaling(p={}, beta=({}, {}), sign={}, s={})".format(
            self.p, self.beta_prev, self.beta_next, self.sign_delta, self.s_solutions)

def corner_equation(s, p, beta_prev, beta_next, sign_delta, branch):
    """Residual p - e^{i branch pi (1+beta_prev)/2} (s - sign_delta)^kappa / s, principal powers."""
    kappa = 0.5*(beta_next-beta_prev)
    return p-np.exp(1j*branch*np.pi*0.5*(1+beta_prev))*(s-sign_delta)**kappa/s

def corner_scaling_solve(p, beta_prev, beta_next, sign_delta, tol=1e-10, maxiter=100):
    """All solutions of the corner scaling equation reached from the p -> inf and p -> 0 seeds.

    Newton runs on kappa Log(s - sign) - Log(s) + i branch pi theta - ln p for
    both branches, theta = (1+beta_prev)/2. Duplicates are merged.

    Raises
    ------
    NoConvergence
        No seed converged.
    """
    assert p > 0, "[Error] p must be positive, got {}".format(p)
    assert sign_delta in (-1, 1), "[Error] sign_delta must be +1 or -1."
    kappa = 0.5*(beta_next-beta_prev)
    theta = 0.5*(1+beta_prev)
    sols = []
    for branch in (1, -1):
        seeds = [
            np.exp(1j*branch*np.pi*0.5*(1+beta_next))/p,
            np.exp(1j*branch*np.pi*theta)*(complex(-sign_delta))**kappa/p,
        ]
        if kappa!=1:
            seeds.append(p**(-1./(1-kappa))*np.exp(1j*branch*np.pi*theta/(1-kappa)))
        for s in seeds:
            s = complex(s)
            for _ in range(maxiter):
                if s==0 or s==sign_delta: break
                F = kappa*np.log(s-sign_delta)-np.log(s)+1j*branch*np.pi*theta-np.log(p)
                dF = kappa/(s-sign_delta)-1./s
                if dF==0: break
                step = F/dF
                s = s-step
                if abs(step) <= 1e-15*max(1., abs(s)): break
            if not np.isfinite(s) or s==0: continue
            res = abs(corner_equation(s, p, beta_prev, beta_next, sign_delta, branch))/p
            if res < tol and not any(abs(s-t) <= 1e-8*max(1., abs(t)) for t in sols):
                sols.append(s)
    if len(sols)==0:
        raise NoConvergence("corner scaling equation: no seed converged (p={}, beta=({}, {}))".format(p, beta_prev, beta_next))
    return CornerScaling(p, beta_prev, beta_next, sign_delta, sols)

def corner_regime(beta_prev, beta_next, limit):
    """'frozen' or 'bead' regime near a corner as p -> inf ('pToInf') or p -> 0 ('pTo0')."""
    assert limit in ('pToInf', 'pTo0'), "[Error] limit must be 'pToInf' or 'pTo0'."
    if beta_next==1: return 'frozen'
    if limit=='pTo0' and beta_prev==-1: return 'frozen'
    if limit=='pToInf' and beta_next==-1: return 'frozen'
    return 'bead'

def corner_height(w, i):
    """chi^{(i)} = sum_{k != i} c_k log|2 sinh((V_i - V_k)/2)| + (V_0 + a + V(V_n) - V_n)/4."""
    c = w.jumps()
    V = w.corners
    keep = (np.arange(len(V))!=i) & (c!=0)
    return float(np.sum(c[keep]*np.log(np.abs(2*np.sinh(0.5*(V[i]-V[keep])))))+anchor_term(w))

def corner_scaling_parameter(w, tau, chi):
    """(p, delta, beta_prev, beta_next) for the corner closest to tau.

    p = e^{chi - chi^{(i)}} |delta|^{1 - (beta_next - beta_prev)/2}, delta = tau - V_i.
    """
    V = w.corners
    i = int(np.argmin(np.abs(V-tau)))
    delta = tau-V[i]
    if delta==0:
        raise DomainViolation("tau={} is the corner itself".format(tau))
    ext = w.ext_slopes
    beta_prev, beta_next = float(ext[i]), float(ext[i+1])
    p = np.exp(chi-corner_height(w, i))*abs(delta)**(1-0.5*(beta_next-beta_prev))
    return float(p), float(delta), beta_prev, beta_next

#---------------------------------------------------------------------------
