#---------------------------------------------------------------------------
# Frozen boundary
# the curve (tau(z), chi(z)) for real z in the domain U:
#   e^{tau} = z - 1/T(z), chi(z) = z S'(z) at (tau(z), 0)
# - domain U and the graph of joins between its intervals
# - boundary points, slope dchi/dtau, residuals
# - component tracing and cusps
#---------------------------------------------------------------------------

import numpy as np
import pandas as pd
from scipy.optimize import brentq

from skewwall.sfun import ActionPoint, T, zSprime, zSprime_real, zSprime2, POLE_TOL
from skewwall.utils import (
    Dict,
    BranchPoint,
    DomainViolation,
    ImaginaryResidue,
    NoSignChange,
    PoleAt,
)

CHI_CAP = 50.
SAMPLES_PER_INTERVAL = 400
IMAG_TOL = 1e-9

#---------------------------------------------------------------------------
# domain U

class DomainU:
    """Intervals of the real z-line carrying the frozen boundary.

    Attributes
    ----------
    intervals : list of skewwall.utils.Dict
        Dict(lo, hi, segment, kind) ordered by position; kind is 'left',
        'right' (the unbounded intervals) or 'segment' (e^{V_{j-1}}, e^{V_j})
        with beta_j = +-1, segment being j.
    glue : list of tuple
        (k, k+1, l): intervals k and k+1 share the corner e^{V_l} where the
        slopes go from -1 to +1 (jump c_l = 1). The curve passes continuously
        through the corner.
    merge : list of tuple
        (k, k+1, l): intervals k and k+1 share e^{V_l} with c_l = 0, which is
        not a pole of T.
    """
    def __init__(self, intervals, glue, merge):
        self.intervals = intervals
        self.glue = glue
        self.merge = merge

    def __len__(self): return len(self.intervals)

    def __iter__(self): return iter(self.intervals)

    def find(self, z):
        """Index of the interval containing z, or None."""
        for k, itv in enumerate(self.intervals):
            if itv.lo < z < itv.hi: return k
        for k, _, l in self.merge:
            if z==self.intervals[k].hi: return k
        return None

    def __repr__(self):
        return "DomainU(intervals={}, glue={}, merge={})".format(
            [(i.lo, i.hi) for i in self.intervals], self.glue, self.merge)

def domain_U(w):
    """Domain U of the wall w.

    (-inf, e^{V_0}), every (e^{V_{j-1}}, e^{V_j}) with a lattice slope and
    (e^{V_n}, inf). Adjacent intervals sharing e^{V_l} are glued when c_l = 1
    and merged when c_l = 0.
    """
    V = w.corners
    c = w.jumps()
    eV = np.exp(V)
    intervals = [Dict(lo=-np.inf, hi=eV[0], segment=0, kind='left')]
    for j in range(1, w.n+1):
        if w.is_lattice(j):
            intervals.append(Dict(lo=eV[j-1], hi=eV[j], segment=j, kind='segment'))
    intervals.append(Dict(lo=eV[-1], hi=np.inf, segment=w.n+1, kind='right'))

    glue, merge = [], []
    for k in range(len(intervals)-1):
        a, b = intervals[k], intervals[k+1]
        if a.hi!=b.lo: continue
        l = int(np.nonzero(eV==a.hi)[0][0])
        if abs(c[l]-1.) < 1e-14: glue.append((k, k+1, l))
        elif abs(c[l]) < 1e-14: merge.append((k, k+1, l))
    return DomainU(intervals, glue, merge)

def _components_of(dom):
    """Groups of interval indices joined by glue, merge, or through infinity."""
    parent = list(range(len(dom)))
    def find(i):
        while parent[i]!=i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i
    def union(i, j): parent[find(i)] = find(j)
    for k, k1, _ in dom.glue+dom.merge: union(k, k1)
    union(0, len(dom)-1)
    groups = {}
    for i in range(len(dom)): groups.setdefault(find(i), []).append(i)

    joined = set((k, k1) for k, k1, _ in dom.glue+dom.merge)
    joined.add((len(dom)-1, 0))
    out = []
    for g in groups.values():
        g = sorted(g)
        # chain order along the curve: start right after a break of the cycle
        start = g[0]
        for i in g:
            prev = (i-1)%len(dom)
            if prev not in g or (prev, i) not in joined:
                start = i
                break
        k = g.index(start)
        out.append(g[k:]+g[:k])
    return sorted(out, key=lambda g: -1 if (0 in g or len(dom)-1 in g) else g[0])

#---------------------------------------------------------------------------
# boundary points

def _check_in_U(w, z, dom=None):
    if dom is None: dom = domain_U(w)
    if dom.find(z) is None:
        raise DomainViolation("z={} is not in the domain U".format(z))

def tau_of_z(w, z):
    """tau(z) = log(z - 1/T(z)), vectorized. No domain check."""
    z_arr = np.asarray(z, dtype=float)
    e_tau = z_arr-1./T(w, z_arr)
    if np.any(e_tau <= 0):
        raise ImaginaryResidue("e^tau = z - 1/T(z) is not positive at z={}".format(z))
    return np.log(e_tau)

def _chi_of(w, z, tau):
    """chi such that z S'(z) vanishes at (tau, chi); checks the imaginary part."""
    ap = ActionPoint(w, tau, 0., strict=False)
    Tz = T(w, z)
    wv = 1./(z*Tz-1.)
    try:
        f = zSprime(ap, None, w=complex(wv))
    except BranchPoint:
        f = zSprime_real(ap, z)
    if abs(f.imag) > IMAG_TOL:
        raise ImaginaryResidue("chi(z) has imaginary part {} at z={}".format(f.imag, z))
    return float(f.real)

def boundary_point(w, z, check=True):
    """(tau(z), chi(z)) on the frozen boundary.

    Parameters
    ----------
    w : BackWall
    z : float
        Point of the domain U.
    check : bool, default=True
        Check that z lies in U.

    Raises
    ------
    DomainViolation
        z is not in U.
    ImaginaryResidue
        tau or chi is not real.
    """
    z = float(z)
    if check: _check_in_U(w, z)
    tau = float(tau_of_z(w, z))
    return tau, _chi_of(w, z, tau)

def dchi_dtau(w, z):
    """Slope z/(z - e^{tau(z)}) - 1/2 of the boundary at z."""
    z = float(z)
    e_tau = z-1./T(w, z)
    if abs(z-e_tau) < 1e-14*max(1., abs(z)):
        raise PoleAt("z={} equals e^tau".format(z), where=np.log(e_tau))
    return z/(z-e_tau)-0.5

def boundary_residuals(w, z):
    """(|z S'|, |d/dz z S'|) at the boundary point of z."""
    tau, chi = boundary_point(w, z, check=False)
    ap = ActionPoint(w, tau, chi, strict=False)
    wv = 1./(z*T(w, z)-1.)
    try:
        r1 = abs(zSprime(ap, None, w=complex(wv)))
    except BranchPoint:
        r1 = abs(zSprime_real(ap, z))
    r2 = abs(zSprime2(ap, z))
    return r1, r2

def _nudge(z_end, inward, offset):
    """z_end moved inward by a relative offset, kept clear of the pole guard of T."""
    d = max(offset*abs(z_end), 10*POLE_TOL*max(1., abs(z_end)))
    return z_end+inward*d

def end_limits(w, k, dom=None, offset=1e-8):
    """Limits of (tau, chi) at both ends of the interval k of U.

    At a pole e^{V_l}, tau tends to V_l; chi tends to +inf unless the jump is
    c_l = 1, in which case the value at a relative offset is reported. At
    infinity tau tends to log(sum_i c_i e^{V_i}) and chi to
    (tau + V(V_n) - V_n)/2.

    Returns
    -------
    limits : skewwall.utils.Dict
        Dict(lo=(tau, chi), hi=(tau, chi)).
    """
    if dom is None: dom = domain_U(w)
    itv = dom.intervals[k]
    c = w.jumps()
    V = w.corners
    out = Dict()
    for side, z_end, inward in (('lo', itv.lo, 1.), ('hi', itv.hi, -1.)):
        if np.isinf(z_end):
            m = float(np.sum(c*np.exp(V)))
            tau = np.log(m)
            out[side] = (tau, 0.5*(tau+w.heights[-1]-V[-1]))
            continue
        l = int(np.nonzero(np.exp(V)==z_end)[0][0])
        if abs(c[l]-1.) < 1e-14 or abs(c[l]) < 1e-14:
            out[side] = boundary_point(w, _nudge(z_end, inward, offset), check=False)
        else:
            out[side] = (float(V[l]), np.inf)
    return out

#---------------------------------------------------------------------------
# sampling

def _interval_samples(itv, n, span):
    """Samples of an interval of U, clustered toward its ends."""
    u = (np.arange(n)+0.5)/n
    ends = np.geomspace(1e-10, 1e-3, max(n//10, 4))
    if itv.kind=='left':
        s = span
        z = itv.hi-s*(1-u)/u
        z = np.concatenate((z, itv.hi-s*ends))
    elif itv.kind=='right':
        s = span
        z = itv.lo+s*u/(1-u)
        z = np.concatenate((z, itv.lo+s*ends))
    else:
        a, b = itv.lo, itv.hi
        z = a+(b-a)*0.5*(1-np.cos(np.pi*u))
        z = np.concatenate((z, a+(b-a)*ends, b-(b-a)*ends))
    z = np.unique(z)
    z = z[(z > itv.lo) & (z < itv.hi)]
    # samples inside the pole guard of T carry no information
    for end in (itv.lo, itv.hi):
        if np.isfinite(end):
            z = z[np.abs(z-end) >= 10*POLE_TOL*max(1., abs(end))]
    return z

def _evaluate(w, z):
    tau = np.empty_like(z)
    chi = np.empty_like(z)
    for i, zi in enumerate(z):
        try:
            tau[i], chi[i] = boundary_point(w, zi, check=False)
        except (PoleAt, BranchPoint):
            tau[i], chi[i] = np.nan, np.nan
    return tau, chi

def _refine(w, z, tau, chi, chi_cap, passes=4, frac=0.01):
    """Insert midpoints in z where consecutive (tau, chi) points are far apart."""
    for _ in range(passes):
        ok = np.isfinite(chi) & (chi <= chi_cap)
        if ok.sum() < 2: break
        scale = max(np.ptp(tau[ok]), np.ptp(chi[ok]), 1e-12)
        step = np.hypot(np.diff(tau), np.diff(chi))
        bad = (step > frac*scale) & ok[1:] & ok[:-1]
        if not np.any(bad): break
        zm = 0.5*(z[1:]+z[:-1])[bad]
        tm, cm = _evaluate(w, zm)
        z = np.concatenate((z, zm))
        order = np.argsort(z)
        z, tau, chi = z[order], np.concatenate((tau, tm))[order], np.concatenate((chi, cm))[order]
    return z, tau, chi

#---------------------------------------------------------------------------
# components and cusps

class BoundaryComponent:
    """One connected component of the frozen boundary.

    Attributes
    ----------
    id : int
    intervals : list of int
        Intervals of U along the component, in curve order.
    z, tau, chi : numpy.ndarray
        Samples, in curve order, clipped at chi_cap.
    cusp : tuple or None
        (z, tau, chi) of the cusp.
    kind : str
        'bottom' for the component through infinity, 'corner' otherwise.
    """
    def __init__(self, id, intervals, z, tau, chi, cusp=None, kind='corner'):
        self.id = id
        self.intervals = intervals
        self.z = z
        self.tau = tau
        self.chi = chi
        self.cusp = cusp
        self.kind = kind

    def __len__(self): return len(self.z)

    def __repr__(self):
        return "BoundaryComponent(id={}, kind={}, intervals={}, samples={}, cusp={})".format(
            self.id, self.kind, self.intervals, len(self.z), self.cusp)

def cusp_function(w, z):
    """T'(z) + T(z)^2, whose zeros in U are the cusps."""
    return T(w, z, 1)+T(w, z)**2

def _interval_cusps(w, itv, n=2000):
    span = max(np.exp(w.corners[-1])-np.exp(w.corners[0]), np.exp(w.corners[0]))
    z = _interval_samples(itv, n, span)
    g = cusp_function(w, z)
    # T' + T^2 vanishes identically when T is a single unit pole
    s = np.sign(g)*(np.abs(g) > 1e-9*T(w, z)**2)
    out = []
    for i in np.nonzero(s[1:]*s[:-1] < 0)[0]:
        zs = brentq(lambda x: cusp_function(w, x), z[i], z[i+1], xtol=1e-15*max(1., abs(z[i])), rtol=4*np.finfo(float).eps, maxiter=200)
        out.append(zs)
    return out

GLUE_OFFSET = 1e-8
GLUE_TOL = 1e-7

def glued_limit(w, l, offset=GLUE_OFFSET):
    """Limit of 1/(z - e^{V_l}) - T(z) at a glued corner e^{V_l}.

    The unit pole cancels, what remains is minus the other terms of T,
    averaged over z = e^{V_l}(1 -+ offset). Positive puts the cusp of the
    glued component right of the corner (tau < V_l), negative left of it
    (tau > V_l) and zero on the corner.
    """
    c = w.jumps()
    eV = np.exp(w.corners)
    others = np.arange(len(c))!=l
    vals = []
    for inward in (-1., 1.):
        z = _nudge(eV[l], inward, offset)
        vals.append(-np.sum(c[others]/(z-eV[others])))
    return float(np.mean(vals))

def find_cusps(w, dom=None):
    """Cusps (z*, tau*, chi*) of the frozen boundary.

    Sign changes of T' + T^2 strictly inside the intervals of U, refined by
    brentq. A sign flip across a glued corner is a vertical tangent of a
    smooth curve, not a cusp, and is never bracketed. Instead, when the
    glued limit vanishes, the cusp is placed on the corner itself, at
    z* = e^{V_l} and tau* = V_l.
    """
    if dom is None: dom = domain_U(w)
    out = []
    for itv in dom:
        for zs in _interval_cusps(w, itv):
            tau, chi = boundary_point(w, zs, check=False)
            out.append((float(zs), tau, chi))
    c = w.jumps()
    for _, _, l in dom.glue:
        # a lone unit pole: the component collapses onto the corner
        if np.count_nonzero(c) < 2: continue
        if abs(glued_limit(w, l)) > GLUE_TOL: continue
        z_corner = float(np.exp(w.corners[l]))
        out = [p for p in out if abs(p[0]-z_corner) > 1e-4*z_corner]
        _, chi = boundary_point(w, _nudge(z_corner, 1., GLUE_OFFSET), check=False)
        out.append((z_corner, float(w.corners[l]), chi))
    return sorted(out)

def _cusp_interval(dom, z):
    """Interval of U holding a cusp, the left one for a cusp on a glued corner."""
    k = dom.find(z)
    if k is not None: return k
    for k, _, _ in dom.glue:
        if z==dom.intervals[k].hi: return k
    return None

def trace_components(w, samples_per_interval=SAMPLES_PER_INTERVAL, chi_cap=CHI_CAP, verbose=False):
    """Connected components of the frozen boundary, sampled and clipped at chi_cap.

    Raises
    ------
    NoSignChange
        A corner component carries no cusp.
    """
    dom = domain_U(w)
    groups = _components_of(dom)
    span = max(np.exp(w.corners[-1])-np.exp(w.corners[0]), np.exp(w.corners[0]))
    cusps = find_cusps(w, dom)
    comps = []
    for cid, g in enumerate(groups):
        zs, ts, cs = [], [], []
        for k in g:
            itv = dom.intervals[k]
            z = _interval_samples(itv, samples_per_interval, span)
            tau, chi = _evaluate(w, z)
            z, tau, chi = _refine(w, z, tau, chi, chi_cap)
            zs.append(z); ts.append(tau); cs.append(chi)
        z, tau, chi = np.concatenate(zs), np.concatenate(ts), np.concatenate(cs)
        keep = np.isfinite(chi) & (chi <= chi_cap)
        kind = 'bottom' if (0 in g or len(dom)-1 in g) else 'corner'
        cusp = None
        own = [c for c in cusps if _cusp_interval(dom, c[0]) in g]
        if own: cusp = own[0]
        if kind=='corner' and cusp is None:
            raise NoSignChange("no cusp on the component over intervals {} ({})".format(
                [(dom.intervals[k].lo, dom.intervals[k].hi) for k in g], w))
        if verbose and len(own) > 1:
            print("[Warning] component {} carries {} cusps".format(cid, len(own)))
        comps.append(BoundaryComponent(cid, g, z[keep], tau[keep], chi[keep], cusp, kind))
    return comps

def components_to_frame(comps):
    """CSV layout of traced components: z, tau, chi, component_id, is_cusp."""
    frames = []
    for c in comps:
        df = pd.DataFrame(dict(z=c.z, tau=c.tau, chi=c.chi, component_id=c.id, is_cusp=False))
        if c.cusp is not None:
            cusp = pd.DataFrame(dict(z=[c.cusp[0]], tau=[c.cusp[1]], chi=[c.cusp[2]], component_id=[c.id], is_cusp=[True]))
            df = pd.concat((df, cusp), ignore_index=True)
        frames.append(df)
    if not frames:
        return pd.DataFrame(columns=['z', 'tau', 'chi', 'component_id', 'is_cusp'])
    return pd.concat(frames, ignore_index=True)

#---------------------------------------------------------------------------
