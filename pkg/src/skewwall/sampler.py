#---------------------------------------------------------------------------
# Skew plane partitions under q^volume
# - exact enumeration of small boxes
# - single-cube Metropolis chains (numba)
# - horizontal tiles and empirical correlations
#---------------------------------------------------------------------------

import numpy as np
import pandas as pd
from numba import njit
from tqdm import tqdm

from skewwall.wall import normalize_partition, partition_steps
from skewwall.utils import Dict, TooLarge, EmptySampleSet

MAX_CELLS = 9
MAX_STATES = 2000000
TAIL_TOL = 1e-12

#---------------------------------------------------------------------------
# box geometry

def removed_mask(lam, c, d):
    """Boolean c x d mask of the cells of lam."""
    lam = normalize_partition(lam, c, d)
    mask = np.zeros((c, d), dtype=bool)
    for i, row in enumerate(lam):
        mask[i, :row] = True
    return mask

def wall_heights(lam, c, d):
    """b(t) for t = -c..d along the boundary path of lam."""
    return -c+np.concatenate([[0], np.cumsum(partition_steps(lam, c, d))])

def diagonals(lam, c, d):
    """Free cells of every diagonal t = j - i, ordered away from the back corner.

    Returns
    -------
    cells : dict
        t -> list of 0-based (i, j).
    """
    mask = removed_mask(lam, c, d)
    cells = {t:[] for t in range(-c, d+1)}
    for i in range(c):
        for j in range(d):
            if not mask[i, j]:
                cells[j-i].append((i, j))
    return cells

#---------------------------------------------------------------------------
# types

class SkewPlanePartition:
    """Heights pi_{i,j} >= 0 on the cells of a c x d box outside lam.

    Heights are non-increasing in i and in j. Removed cells hold 0.
    """
    def __init__(self, heights, lam=(), validate=True):
        heights = np.asarray(heights, dtype=np.int64)
        assert heights.ndim==2, "[Error] Heights must be a 2D array."
        self.heights = heights
        self.c, self.d = heights.shape
        self.lam = tuple(v for v in normalize_partition(lam, self.c, self.d) if v > 0)
        if validate: self.validate()

    @property
    def removed(self):
        return removed_mask(self.lam, self.c, self.d)

    @property
    def volume(self):
        return int(self.heights.sum())

    def validate(self):
        h, m = self.heights, self.removed
        assert np.all(h >= 0), "[Error] Negative heights in {}".format(h.tolist())
        assert np.all(h[m]==0), "[Error] Removed cells must hold 0."
        # a removed cell is never below or right of a free one
        down = (h[:-1,:] >= h[1:,:]) | m[:-1,:]
        right = (h[:,:-1] >= h[:,1:]) | m[:,:-1]
        assert np.all(down) and np.all(right), "[Error] Heights are not non-increasing: {}".format(h.tolist())

    def __eq__(self, other):
        return (isinstance(other, SkewPlanePartition) and self.lam==other.lam
            and np.array_equal(self.heights, other.heights))

    def __repr__(self):
        return "SkewPlanePartition(lam={}, heights={})".format(self.lam, self.heights.tolist())

class TileConfiguration:
    """Horizontal tiles of a skew plane partition, slice by slice.

    On slice t the free diagonal cells carry mu_1 >= ... >= mu_l. Tiles sit at
    x = mu_k - k for k <= l and at every x <= -l-1; the centre is
    (t, x + b(t)/2). Only the finite part is stored.
    """
    def __init__(self, lam, c, d, particles):
        self.lam = tuple(lam)
        self.c, self.d = c, d
        self.b = dict(zip(range(-c, d+1), wall_heights(lam, c, d).tolist()))
        self.particles = {t:np.asarray(v, dtype=np.int64) for t, v in particles.items()}

    def ell(self, t):
        return len(self.particles.get(t, ()))

    def contains(self, p):
        """True when a horizontal tile is centred at the LatticePoint p."""
        if p.t not in self.b:
            raise ValueError("slice t={} is outside the box".format(p.t))
        x = p.h-0.5*self.b[p.t]
        if x!=np.round(x):
            raise ValueError("(t={}, h={}) is not a tile position".format(p.t, p.h))
        return bool(x <= -self.ell(p.t)-1 or np.any(self.particles.get(p.t, [])==x))

    def points(self):
        """Finite part as a list of (t, h)."""
        return [(t, float(x+0.5*self.b[t])) for t in sorted(self.particles) for x in self.particles[t]]

    def __eq__(self, other):
        return (isinstance(other, TileConfiguration) and self.lam==other.lam
            and self.points()==other.points())

def partition_tiles(pi):
    """TileConfiguration of the SkewPlanePartition pi."""
    particles = {}
    for t, cells in diagonals(pi.lam, pi.c, pi.d).items():
        mu = np.array([pi.heights[i, j] for i, j in cells], dtype=np.int64)
        particles[t] = mu-np.arange(1, len(mu)+1)
    return TileConfiguration(pi.lam, pi.c, pi.d, particles)

def tiles_to_partition(tiles):
    """Inverse of partition_tiles."""
    heights = np.zeros((tiles.c, tiles.d), dtype=np.int64)
    for t, cells in diagonals(tiles.lam, tiles.c, tiles.d).items():
        xs = np.sort(tiles.particles.get(t, np.zeros(0, dtype=np.int64)))[::-1]
        assert len(xs)==len(cells), "[Error] Slice {} holds {} tiles for {} cells.".format(t, len(xs), len(cells))
        for k, (i, j) in enumerate(cells):
            heights[i, j] = xs[k]+k+1
    return SkewPlanePartition(heights, tiles.lam)

def occupancy(heights, lam, c, d, p):
    """Tile indicator at the LatticePoint p for a stack of height arrays (n, c, d)."""
    heights = np.asarray(heights)
    b = dict(zip(range(-c, d+1), wall_heights(lam, c, d).tolist()))
    if p.t not in b:
        raise ValueError("slice t={} is outside the box".format(p.t))
    x = p.h-0.5*b[p.t]
    if x!=np.round(x):
        raise ValueError("(t={}, h={}) is not a tile position".format(p.t, p.h))
    cells = diagonals(lam, c, d)[p.t]
    if x <= -len(cells)-1:
        return np.ones(len(heights), dtype=bool)
    hit = np.zeros(len(heights), dtype=bool)
    for k, (i, j) in enumerate(cells):
        hit |= heights[:, i, j]-(k+1)==x
    return hit

#---------------------------------------------------------------------------
# exact enumeration

def truncation_height(q, n_cells, tol=TAIL_TOL):
    """Smallest H with q^H n_cells/(1-q) < tol."""
    return max(1, int(np.ceil(np.log(tol*(1-q)/max(n_cells, 1))/np.log(q)))+1)

def macmahon_bound(c, d, H):
    """Number of plane partitions in a c x d x H box."""
    i, j = np.meshgrid(np.arange(1, c+1), np.arange(1, d+1), indexing='ij')
    return float(np.prod((i+j+H-1)/(i+j-1)))

class ExactDistribution:
    """All states of a small box with their q^volume probabilities.

    The truncation at height H drops a mass below q^H (cd)/(1-q).
    """
    def __init__(self, states, lam, c, d, q, H):
        self.states = states
        self.lam = tuple(lam)
        self.c, self.d = c, d
        self.q = q
        self.H = H
        self.volumes = states.reshape(len(states), -1).sum(axis=1)
        weights = q**self.volumes.astype(float)
        self.Z = float(weights.sum())
        self.probabilities = weights/self.Z
        self.tail_bound = q**H*(c*d)/(1-q)

    def __len__(self): return len(self.states)

    def probability(self, pi):
        """Probability of the SkewPlanePartition pi."""
        hit = np.all(self.states==pi.heights[None], axis=(1, 2))
        return float(self.probabilities[hit].sum())

    def correlation(self, U):
        """Probability of tiles at every LatticePoint of U."""
        ind = np.ones(len(self.states), dtype=bool)
        for p in U:
            ind &= occupancy(self.states, self.lam, self.c, self.d, p)
        return float(self.probabilities[ind].sum())

    def marginal(self, p):
        return self.correlation([p])

    def expected_volume(self):
        return float(np.dot(self.probabilities, self.volumes))

def enumerate_partitions(lam, c, d, q, H=None, max_states=MAX_STATES):
    """Exact distribution of the q^volume measure on a small box.

    Free cells are added one at a time in row-major order; every new column
    takes the values 0..H and states breaking monotonicity are masked out.

    Raises
    ------
    TooLarge
        More than 9 free cells, or the MacMahon bound of the box exceeds max_states.
    """
    assert 0 < q < 1, "[Error] q must be in (0,1), got {}".format(q)
    mask = removed_mask(lam, c, d)
    n_cells = int((~mask).sum())
    if n_cells > MAX_CELLS:
        raise TooLarge("{} free cells, at most {} can be enumerated".format(n_cells, MAX_CELLS))
    if H is None: H = truncation_height(q, c*d)
    bound = macmahon_bound(c, d, H)
    if bound > max_states:
        raise TooLarge("up to {:.3g} states at height {}, cap is {}".format(bound, H, max_states))

    states = np.zeros((1, c, d), dtype=np.int64)
    values = np.arange(H+1)
    for i in range(c):
        for j in range(d):
            if mask[i, j]: continue
            n = len(states)
            states = np.repeat(states, H+1, axis=0)
            states[:, i, j] = np.tile(values, n)
            ok = np.ones(len(states), dtype=bool)
            if i > 0 and not mask[i-1, j]: ok &= states[:, i, j] <= states[:, i-1, j]
            if j > 0 and not mask[i, j-1]: ok &= states[:, i, j] <= states[:, i, j-1]
            states = states[ok]
    return ExactDistribution(states, lam, c, d, q, H)

#---------------------------------------------------------------------------
# Metropolis dynamics

@njit(cache=True)
def _seed(seed):
    np.random.seed(seed)

@njit(cache=True)
def _sweep(heights, ci, cj, removed, q, n_steps):
    c, d = heights.shape
    n = len(ci)
    for _ in range(n_steps):
        k = np.random.randint(n)
        i, j = ci[k], cj[k]
        h = heights[i, j]
        if np.random.random() < 0.5:
            if i > 0 and not removed[i-1, j] and heights[i-1, j] <= h: continue
            if j > 0 and not removed[i, j-1] and heights[i, j-1] <= h: continue
            if np.random.random() < q:
                heights[i, j] = h+1
        else:
            if h==0: continue
            if i < c-1 and heights[i+1, j] >= h: continue
            if j < d-1 and heights[i, j+1] >= h: continue
            heights[i, j] = h-1
    return heights

@njit(cache=True)
def _chain(heights, ci, cj, removed, q, burn_in, thin, n_samples):
    out = np.zeros((n_samples, heights.shape[0], heights.shape[1]), dtype=np.int64)
    _sweep(heights, ci, cj, removed, q, burn_in)
    for s in range(n_samples):
        _sweep(heights, ci, cj, removed, q, thin)
        out[s] = heights
    return out

def _free_cells(lam, c, d):
    mask = removed_mask(lam, c, d)
    ci, cj = np.nonzero(~mask)
    return ci.astype(np.int64), cj.astype(np.int64), mask

def mcmc_sample(lam, c, d, q, steps, seed=0, init=None):
    """State after `steps` single-cube Metropolis proposals from init (empty by default).

    A proposal picks a free cell uniformly and adds or removes one cube with
    probability 1/2 each; additions are accepted with probability q and
    removals always, when monotonicity is kept.
    """
    assert 0 < q < 1, "[Error] q must be in (0,1), got {}".format(q)
    assert steps >= 1, "[Error] At least one step."
    ci, cj, mask = _free_cells(lam, c, d)
    heights = np.zeros((c, d), dtype=np.int64) if init is None else np.array(init.heights, dtype=np.int64)
    _seed(seed)
    _sweep(heights, ci, cj, mask, q, int(steps))
    return SkewPlanePartition(heights, lam, validate=False)

class SampleSet:
    """Stack of height arrays (n, c, d) sharing one box, a sequence of SkewPlanePartition."""
    def __init__(self, heights, lam, c, d):
        self.heights = np.asarray(heights, dtype=np.int64)
        self.lam = tuple(lam)
        self.c, self.d = c, d

    def __len__(self): return len(self.heights)

    def __getitem__(self, k):
        return SkewPlanePartition(self.heights[k], self.lam, validate=False)

    def __iter__(self):
        for k in range(len(self)): yield self[k]

    def tiles(self):
        return [partition_tiles(pi) for pi in self]

def mcmc_chain(lam, c, d, q, n_samples, burn_in=None, thin=None, seed=0, chunk=10000, verbose=False):
    """Thinned samples of one Metropolis chain.

    Parameters
    ----------
    burn_in : int, default=None
        Proposals before the first sample, 1e5 per free cell when None.
    thin : int, default=None
        Proposals between samples, 100 per free cell when None.
    chunk : int, default=10000
        Samples drawn per compiled call.

    Returns
    -------
    samples : SampleSet
    """
    assert 0 < q < 1, "[Error] q must be in (0,1), got {}".format(q)
    ci, cj, mask = _free_cells(lam, c, d)
    n_cells = len(ci)
    burn_in = 100000*n_cells if burn_in is None else int(burn_in)
    thin = 100*n_cells if thin is None else int(thin)
    assert thin >= 1, "[Error] Thinning must be positive."
    heights = np.zeros((c, d), dtype=np.int64)
    _seed(seed)
    _sweep(heights, ci, cj, mask, q, burn_in)
    out = []
    n_chunks = int(np.ceil(n_samples/chunk))
    for k in tqdm(range(n_chunks), disable=not verbose, desc="mcmc"):
        n = min(chunk, n_samples-k*chunk)
        out.append(_chain(heights, ci, cj, mask, q, 0, thin, n))
    stack = np.concatenate(out) if out else np.zeros((0, c, d), dtype=np.int64)
    return SampleSet(stack, lam, c, d)

#---------------------------------------------------------------------------
# estimators

def empirical_correlation(samples, U):
    """Fraction of samples with tiles at every point of U.

    Parameters
    ----------
    samples : SampleSet or sequence of TileConfiguration
    U : sequence of LatticePoint

    Returns
    -------
    est : Dict
        estimate and its binomial standard error.

    Raises
    ------
    EmptySampleSet
    """
    if len(samples)==0:
        raise EmptySampleSet("no samples to estimate from")
    U = list(U)
    if isinstance(samples, SampleSet):
        ind = np.ones(len(samples), dtype=bool)
        for p in U:
            ind &= occupancy(samples.heights, samples.lam, samples.c, samples.d, p)
    else:
        ind = np.array([all(s.contains(p) for p in U) for s in samples], dtype=bool)
    n = len(ind)
    est = float(ind.mean())
    return Dict(estimate=est, stderr=float(np.sqrt(est*(1-est)/n)))

#---------------------------------------------------------------------------
# dumps

def save_samples(samples, path):
    """One partition per line, row-major heights."""
    with open(path, 'w') as f:
        for pi in samples:
            f.write(' '.join(str(v) for v in pi.heights.ravel())+'\n')

def load_samples(path, lam, c, d):
    heights = np.loadtxt(path, dtype=np.int64, ndmin=2).reshape(-1, c, d)
    return SampleSet(heights, lam, c, d)

def tiles_frame(samples):
    """Finite tile parts as a DataFrame with columns sample, t, h."""
    rows = []
    for k, pi in enumerate(samples):
        for t, h in partition_tiles(pi).points():
            rows.append((k, t, h))
    return pd.DataFrame(rows, columns=['sample', 't', 'h'])

#---------------------------------------------------------------------------
