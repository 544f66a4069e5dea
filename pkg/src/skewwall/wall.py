#---------------------------------------------------------------------------
# Back walls
# - BackWall: continuous piecewise-linear profile V(tau), slopes in [-1,1]
# - LatticeWall: discrete back wall b(t), slopes +-1 between half-integers
# - validation, evaluation, corner classification, discretization and box
#   extension
#---------------------------------------------------------------------------

import numpy as np

from skewwall.utils import (
    Dict,
    NonIncreasingCorners,
    SlopeOutOfRange,
    EqualAdjacentSlopes,
    ScaleTooCoarse,
    DomainViolation,
)

# slopes closer than this to +-1 are lattice slopes
LATTICE_TOL = 1e-12

def is_lattice_slope(beta, tol=LATTICE_TOL):
    return abs(abs(beta)-1.) <= tol

#---------------------------------------------------------------------------
# continuous back wall

class BackWall:
    """Continuous piecewise-linear back wall.

    Parameters
    ----------
    corners : sequence of float
        Corner positions V_0 < V_1 < ... < V_n.
    slopes : sequence of float
        Slopes beta_1, ..., beta_n, beta_i is the slope on (V_{i-1}, V_i).
    anchor : float, default=None
        Height V(V_0). None means -V_0, so that a wall with end slopes -1/+1
        matches |tau| far away from its corners.
    validate : bool, default=True
        Run validate_wall on construction.

    Notes
    -----
    Outside [V_0, V_n] the wall is extended with slope -1 on the left and +1
    on the right. The jumps c_i = (beta_{i+1} - beta_i)/2, i=0..n, use the
    virtual slopes beta_0 = -1 and beta_{n+1} = 1.
    """
    def __init__(self, corners, slopes, anchor=None, validate=True):
        corners = np.array(corners, dtype=float).ravel()
        slopes = np.array(slopes, dtype=float).ravel()
        if anchor is None and len(corners)>0:
            anchor = -corners[0]
        self._corners = corners
        self._slopes = slopes
        self._anchor = float(anchor) if anchor is not None else 0.
        if validate:
            validate_wall(self)
        self._corners.setflags(write=False)
        self._slopes.setflags(write=False)

        # heights at the corners
        heights = np.empty_like(self._corners)
        heights[0] = self._anchor
        if self.n > 0:
            heights[1:] = self._anchor + np.cumsum(self._slopes*np.diff(self._corners))
        heights.setflags(write=False)
        self._heights = heights

    @property
    def corners(self): return self._corners

    @property
    def slopes(self): return self._slopes

    @property
    def anchor(self): return self._anchor

    @property
    def n(self): return len(self._corners)-1

    @property
    def heights(self):
        """V(V_i) for i=0..n."""
        return self._heights

    @property
    def ext_slopes(self):
        """Slopes with the virtual end slopes: [-1, beta_1, ..., beta_n, 1]."""
        return np.concatenate(([-1.], self._slopes, [1.]))

    def jumps(self):
        """Half slope jumps c_i at every corner, i=0..n. They are the residues of T(z)."""
        return 0.5*np.diff(self.ext_slopes)

    def __call__(self, tau):
        return eval_wall(self, tau)

    def __repr__(self):
        return "BackWall(corners={}, slopes={}, anchor={})".format(
            self._corners.tolist(), self._slopes.tolist(), self._anchor)

    def __eq__(self, other):
        if not isinstance(other, BackWall): return NotImplemented
        return (np.array_equal(self._corners, other._corners)
            and np.array_equal(self._slopes, other._slopes)
            and self._anchor==other._anchor)

    def __hash__(self):
        return hash((tuple(self._corners), tuple(self._slopes), self._anchor))

    def shifted(self, delta):
        """Same wall with the anchor moved by delta."""
        return BackWall(self._corners, self._slopes, self._anchor+delta, validate=False)

    def segment_index(self, tau):
        """Index j such that V_{j-1} < tau < V_j.

        Raises DomainViolation when tau is a corner or lies outside [V_0, V_n].
        """
        V = self._corners
        if not (V[0] < tau < V[-1]):
            raise DomainViolation("tau={} is outside the open wall ({}, {})".format(tau, V[0], V[-1]))
        j = int(np.searchsorted(V, tau, side='left'))
        if V[j]==tau:
            raise DomainViolation("tau={} is a corner of the wall".format(tau))
        return j

    def slope_at(self, tau):
        """One-sided slopes (V'(tau-), V'(tau+)), box extension outside the wall."""
        ext = self.ext_slopes
        V = self._corners
        left = ext[int(np.searchsorted(V, tau, side='left'))]
        right = ext[int(np.searchsorted(V, tau, side='right'))]
        return float(left), float(right)

    def is_lattice(self, j):
        """Whether segment j (1-based) has slope +-1."""
        return is_lattice_slope(self._slopes[j-1])

    def lattice_segments(self):
        return [j for j in range(1, self.n+1) if self.is_lattice(j)]

#---------------------------------------------------------------------------
# operations

def validate_wall(w):
    """Check the BackWall invariants.

    Adjacent slopes must differ at every interior corner. The end slopes may
    equal the virtual slopes (beta_1 = -1 or beta_n = 1), as in the wall |tau|
    on [-1, 1]. The end corner then has no jump, like the box corner of a
    lattice wall.

    Raises
    ------
    NonIncreasingCorners, SlopeOutOfRange, EqualAdjacentSlopes
    """
    V = np.asarray(w.corners, dtype=float)
    beta = np.asarray(w.slopes, dtype=float)
    if len(V) < 2:
        raise NonIncreasingCorners("a wall needs at least two corners, got {}".format(len(V)))
    if not np.all(np.isfinite(V)):
        raise NonIncreasingCorners("corners must be finite")
    if np.any(np.diff(V) <= 0):
        i = int(np.argmax(np.diff(V) <= 0))
        raise NonIncreasingCorners("corners must be strictly increasing: V_{}={} >= V_{}={}".format(i, V[i], i+1, V[i+1]))
    if len(beta)!=len(V)-1:
        raise SlopeOutOfRange("expected {} slopes for {} corners, got {}".format(len(V)-1, len(V), len(beta)))
    bad = ~np.isfinite(beta) | (np.abs(beta) > 1+LATTICE_TOL)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise SlopeOutOfRange("slope beta_{}={} is not in [-1,1]".format(i+1, beta[i]))
    for i in range(len(beta)-1):
        if beta[i]==beta[i+1]:
            raise EqualAdjacentSlopes("beta_{} = beta_{} = {} at corner V_{}={}".format(i+1, i+2, beta[i], i+1, V[i+1]))

def eval_wall(w, tau):
    """Height V(tau), vectorized over tau, box extension outside [V_0, V_n].

    Examples
    --------
    >>> eval_wall(BackWall([-1,0,1], [-1,1], anchor=1), 0.5)
    0.5
    """
    tau_arr = np.asarray(tau, dtype=float)
    V = w.corners
    H = w.heights
    out = np.interp(tau_arr, V, H)
    out = np.where(tau_arr < V[0], H[0]+(V[0]-tau_arr), out)
    out = np.where(tau_arr > V[-1], H[-1]+(tau_arr-V[-1]), out)
    if out.ndim==0: return float(out)
    return out

def classify_corners(w):
    """Interior corner records.

    Returns
    -------
    records : list of skewwall.utils.Dict
        One Dict(index, position, kind, lattice_adjacent) per interior corner
        V_1..V_{n-1}. kind is 'outer' when the slope increases across the corner.
    """
    records = []
    beta = w.slopes
    for i in range(1, w.n):
        left, right = beta[i-1], beta[i]
        records.append(Dict(
            index=i,
            position=float(w.corners[i]),
            kind='outer' if left < right else 'inner',
            lattice_adjacent=bool(is_lattice_slope(left) or is_lattice_slope(right)),
        ))
    return records

def count_cusp_corners(w):
    """Number of outer corners with at least one lattice slope."""
    return sum(1 for c in classify_corners(w) if c.kind=='outer' and c.lattice_adjacent)

def box_extend(w, margin=None):
    """Return the wall extended by slope -1 before V_0 and +1 after V_n.

    The extension is materialized as explicit end segments of length margin
    (default: the wall width). An end whose slope is already the extension
    slope is left alone, so box_extend is idempotent. T(z), S and the
    frozen boundary are unchanged by the extension.
    """
    V = list(w.corners)
    beta = list(w.slopes)
    anchor = w.anchor
    if margin is None:
        margin = max(1., V[-1]-V[0])
    assert margin > 0, "[Error] margin must be positive."
    if beta[0]!=-1.:
        V = [V[0]-margin] + V
        beta = [-1.] + beta
        anchor = anchor + margin
    if beta[-1]!=1.:
        V = V + [V[-1]+margin]
        beta = beta + [1.]
    return BackWall(V, beta, anchor)

#---------------------------------------------------------------------------
# lattice back wall

class LatticeWall:
    """Discrete back wall b(t) confined to the box [t_left, t_right].

    Parameters
    ----------
    steps : sequence of int
        Slopes +1 or -1 of b on the unit steps centred at the half-integers
        m = t_left + 1/2, t_left + 3/2, ..., t_right - 1/2.
    t_left : int
        Left box end.
    b_left : int
        b(t_left). b(t) has the parity of t.
    r : float, default=None
        Scale, q = exp(-r). Exactly one of r and q must be given.
    q : float, default=None
        Weight per cube, 0 < q < 1.

    Notes
    -----
    m is in D+ when the slope at m is -1 and in D- when it is +1. Outside the
    box the wall continues with slope -1 on the left and +1 on the right; those
    half-integers never enter the finite products.
    """
    def __init__(self, steps, t_left, b_left, r=None, q=None):
        steps = np.asarray(steps, dtype=np.int64).ravel()
        assert np.all(np.abs(steps)==1), "[Error] Lattice wall steps must be +1 or -1."
        assert (r is None) != (q is None), "[Error] Give exactly one of r and q."
        if q is not None:
            assert 0 < q < 1, "[Error] q must be in (0,1), got {}".format(q)
            r = -np.log(q)
        assert r > 0, "[Error] r must be positive, got {}".format(r)
        assert (int(b_left)-int(t_left))%2==0, "[Error] b(t) must have the parity of t."
        self.steps = steps
        self.steps.setflags(write=False)
        self.t_left = int(t_left)
        self.b_left = int(b_left)
        self.r = float(r)

        self._b = np.concatenate(([self.b_left], self.b_left+np.cumsum(steps)))
        self._b.setflags(write=False)

    @property
    def q(self): return float(np.exp(-self.r))

    @property
    def t_right(self): return self.t_left+len(self.steps)

    @property
    def t_range(self): return self.t_left, self.t_right

    @property
    def m_values(self):
        """Half-integer centres of the box steps."""
        return self.t_left+0.5+np.arange(len(self.steps))

    @property
    def d_plus(self):
        """Half-integers of the box where the wall has slope -1."""
        return self.m_values[self.steps==-1]

    @property
    def d_minus(self):
        """Half-integers of the box where the wall has slope +1."""
        return self.m_values[self.steps==1]

    def b(self, t):
        """b(t) at integer t, box extension outside [t_left, t_right]."""
        t_arr = np.asarray(t)
        assert np.all(np.asarray(t_arr)==np.round(t_arr)), "[Error] b(t) is defined at integer t."
        t_int = np.asarray(np.round(t_arr), dtype=np.int64)
        idx = np.clip(t_int-self.t_left, 0, len(self.steps))
        out = self._b[idx]
        out = np.where(t_int < self.t_left, self.b_left+(self.t_left-t_int), out)
        out = np.where(t_int > self.t_right, self._b[-1]+(t_int-self.t_right), out)
        if out.ndim==0: return int(out)
        return out

    def slope(self, m):
        """Slope of b at the half-integer m."""
        k = int(np.floor(m-self.t_left))
        if k < 0: return -1
        if k >= len(self.steps): return 1
        return int(self.steps[k])

    def scaled_profile(self, tau):
        """B(tau) = r*b(tau/r), linear between lattice points."""
        t = np.asarray(tau, dtype=float)/self.r
        ts = np.arange(self.t_left, self.t_right+1)
        out = np.interp(t, ts, self._b)
        out = np.where(t < self.t_left, self.b_left+(self.t_left-t), out)
        out = np.where(t > self.t_right, self._b[-1]+(t-self.t_right), out)
        out = self.r*out
        if out.ndim==0: return float(out)
        return out

    def corners(self):
        """Integer positions u_i where the slope changes, box ends included."""
        change = np.nonzero(np.diff(self.steps))[0]+1
        return np.concatenate(([self.t_left], self.t_left+change, [self.t_right]))

    def __eq__(self, other):
        if not isinstance(other, LatticeWall): return NotImplemented
        return (self.t_left==other.t_left and self.b_left==other.b_left
            and np.array_equal(self.steps, other.steps) and self.r==other.r)

    def __repr__(self):
        return "LatticeWall(t_range={}, b_left={}, r={}, steps={})".format(
            self.t_range, self.b_left, self.r, ''.join('+' if s>0 else '-' for s in self.steps))

    @classmethod
    def from_partition(cls, partition, c, d, q):
        """Lattice wall of the removed partition inside a c x d box.

        The boundary path of the partition runs from the lower-left box corner
        (row-line c, column-line 0) to the upper-right one (row-line 0,
        column-line d). A right step has slope -1, an up step slope +1, and
        b(t) = -(row-line + column-line) at the path vertex on diagonal t.

        Examples
        --------
        >>> LatticeWall.from_partition((), 1, 1, q=0.5).steps
        array([ 1, -1])
        """
        return cls(partition_steps(partition, c, d), t_left=-c, b_left=-c, q=q)

    def to_backwall(self):
        """Exact continuous wall of the scaled profile r*b(tau/r)."""
        u = self.corners()
        beta = [float(self.slope(a+0.5)) for a in u[:-1]]
        return BackWall(self.r*u, beta, anchor=self.r*self.b_left)

def normalize_partition(partition, c, d):
    """Row lengths padded to c rows, checked against the c x d box."""
    lam = [int(v) for v in partition if int(v)>0]
    assert all(lam[i]>=lam[i+1] for i in range(len(lam)-1)), "[Error] Partition rows must be weakly decreasing: {}".format(partition)
    assert len(lam)<=c and (len(lam)==0 or lam[0]<=d), "[Error] Partition {} does not fit in a {}x{} box.".format(partition, c, d)
    return lam + [0]*(c-len(lam))

def partition_steps(partition, c, d):
    """Steps of the boundary path of the partition, +1 up and -1 right, from row-line c to row-line 0."""
    lam = normalize_partition(partition, c, d)
    steps = []
    col = 0
    for i in range(c, 0, -1):
        steps += [-1]*(lam[i-1]-col)
        col = lam[i-1]
        steps += [1]
    steps += [-1]*(d-col)
    return steps

#---------------------------------------------------------------------------
# discretization

SCHEMES = ('floor', 'nearest')

SNAP_TOL = 1e-9

def _parity_round(target, t, scheme):
    """Integer with the parity of t, below target (floor) or nearest to it, ties up (nearest).

    Targets within SNAP_TOL of a rounding threshold are moved onto it, so
    that float noise on lattice slopes cannot split one parity class.
    """
    x = (np.asarray(target, dtype=float)-t)/2.
    if scheme=='nearest': x = x+0.5
    k = np.floor(x+SNAP_TOL)
    return (t+2*k).astype(np.int64)

def discretize(w, r, scheme='floor'):
    """Lattice wall tracking V at scale r.

    The targets V(r t)/r at the integer points of the box are rounded onto the
    integers with the parity of t, down for 'floor' and to the nearest for
    'nearest'. Consecutive rounded values differ by exactly one because V is
    1-Lipschitz, and between lattice points the deviation is monotone, so
    sup |B - V| < 2r for 'floor' and <= r for 'nearest'.

    Parameters
    ----------
    w : BackWall
    r : float
        Scale, q = exp(-r).
    scheme : str, default='floor'
        'floor' or 'nearest'.

    Returns
    -------
    lw : LatticeWall
    """
    assert scheme in SCHEMES, "[Error] Unknown scheme {}, valid schemes: {}".format(scheme, SCHEMES)
    assert r > 0, "[Error] r must be positive, got {}".format(r)
    min_len = float(np.min(np.diff(w.corners)))
    if r > min_len/4.:
        raise ScaleTooCoarse("r={} is coarser than a quarter of the shortest segment ({})".format(r, min_len))
    t_left = int(np.rint(w.corners[0]/r))
    t_right = int(np.rint(w.corners[-1]/r))
    ts = np.arange(t_left, t_right+1)
    b = _parity_round(eval_wall(w, r*ts)/r, ts, scheme)
    steps = np.diff(b)
    assert np.all(np.abs(steps)==1), "[Error] Staircase construction failed, the wall is not 1-Lipschitz."
    return LatticeWall(steps, t_left=t_left, b_left=int(b[0]), r=r)

def sup_deviation(lw, w, resolution=10):
    """sup over [V_0, V_n] of |B(tau) - V(tau)|, scanned at step r/resolution."""
    taus = np.arange(w.corners[0], w.corners[-1], lw.r/resolution)
    taus = np.append(taus, w.corners[-1])
    return float(np.max(np.abs(lw.scaled_profile(taus)-eval_wall(w, taus))))

#---------------------------------------------------------------------------
