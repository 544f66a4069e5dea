#---------------------------------------------------------------------------
# Figures: frozen boundary, density and phase maps
# tau is horizontal, chi vertical
#---------------------------------------------------------------------------

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import numpy as np

from skewwall.wall import eval_wall

PHASE_COLORS = {'liquid':0.6, 'frozen':0.1, 'boundary':1.0, 'mismatch':0.35}

#---------------------------------------------------------------------------

def _wall_profile(ax, w, tau_range=None):
    V = w.corners
    lo, hi = (V[0], V[-1]) if tau_range is None else tau_range
    taus = np.linspace(lo, hi, 500)
    ax.plot(taus, 0.5*eval_wall(w, taus), color='k', lw=1, ls='--', label='wall')

def _boundary(ax, comps):
    for c in comps:
        # split where the curve jumps through infinity or gets clipped
        gaps = np.nonzero(np.abs(np.diff(c.tau))+np.abs(np.diff(c.chi)) > 1.)[0]+1
        for k, (tau, chi) in enumerate(zip(np.split(c.tau, gaps), np.split(c.chi, gaps))):
            ax.plot(tau, chi, color='C{}'.format(c.id%10), lw=1.2,
                label='component {}'.format(c.id) if k==0 else None)
        if c.cusp is not None:
            ax.plot(c.cusp[1], c.cusp[2], 'o', color='C3', ms=5)

def save_figure(fig, path):
    fig.savefig(path, format='svg', bbox_inches='tight')
    plt.close(fig)

def plot_boundary(w, comps, path, window=None):
    """Frozen boundary components, cusps and the wall profile V/2."""
    fig, ax = plt.subplots(figsize=(7, 5))
    tau_range = None if window is None else window[:2]
    _wall_profile(ax, w, tau_range)
    _boundary(ax, comps)
    if window is not None:
        ax.set_xlim(window[0], window[1])
        ax.set_ylim(window[2], window[3])
    ax.set_xlabel(r'$\tau$')
    ax.set_ylabel(r'$\chi$')
    ax.legend(loc='best', fontsize=7)
    save_figure(fig, path)

def _mesh(df, col):
    taus = np.sort(df.tau.unique())
    chis = np.sort(df.chi.unique())
    grid = df.pivot(index='chi', columns='tau', values=col).reindex(index=chis, columns=taus)
    return taus, chis, grid.to_numpy(dtype=float)

def plot_density(df, path, w=None, comps=None):
    """Grayscale heatmap of the density column of df, boundary overlaid when comps is given."""
    taus, chis, vals = _mesh(df, 'density')
    fig, ax = plt.subplots(figsize=(7, 5))
    im = ax.pcolormesh(taus, chis, vals, cmap='gray', vmin=0., vmax=1., shading='nearest')
    fig.colorbar(im, ax=ax, label='density')
    if w is not None: _wall_profile(ax, w, (taus[0], taus[-1]))
    if comps is not None: _boundary(ax, comps)
    ax.set_xlim(taus[0], taus[-1])
    ax.set_ylim(chis[0], chis[-1])
    ax.set_xlabel(r'$\tau$')
    ax.set_ylabel(r'$\chi$')
    save_figure(fig, path)

def plot_phases(df, path, w=None):
    df = df.assign(code=df.phase.map(PHASE_COLORS))
    taus, chis, vals = _mesh(df, 'code')
    fig, ax = plt.subplots(figsize=(7, 5))
    ax.pcolormesh(taus, chis, vals, cmap='gray', vmin=0., vmax=1., shading='nearest')
    if w is not None: _wall_profile(ax, w, (taus[0], taus[-1]))
    ax.set_xlabel(r'$\tau$')
    ax.set_ylabel(r'$\chi$')
    ax.set_title('liquid (light) / frozen (dark)')
    save_figure(fig, path)

#---------------------------------------------------------------------------
