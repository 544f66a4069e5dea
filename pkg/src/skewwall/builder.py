#---------------------------------------------------------------------------
# Builders
# from a config to walls, grids and registered suites
#---------------------------------------------------------------------------

import numpy as np

from skewwall import register
from skewwall.wall import BackWall
from skewwall.utils import Dict, load_wall_file, SuiteUnknown

#---------------------------------------------------------------------------
# utils to read config's functions in the function register

def read_config(config_fct, register_cat, **kwargs):
    """Read the config function in the register category and run the corresponding function with the keyword arguments which are merged from 1. the register kwargs, 2. the config file kwargs and 3. this function kwargs.

    Parameters
    ----------
    config_fct : Dict
        Dict(fct=name, kwargs=Dict()), fct being a name listed in the register.
    register_cat : Dict
        Dictionary defining one category in the register.
    **kwargs : dict, optional
        Additional keyword arguments of the function defined by the config_fct

    Returns
    -------
    The eventual outputs of the function.
    """
    if config_fct.fct not in register_cat:
        raise SuiteUnknown("{} is not registered, valid names: {}".format(config_fct.fct, list(register_cat.keys())))
    register_fct_ = register_cat[config_fct.fct]
    register_kwargs = {**register_fct_.kwargs, **config_fct.get('kwargs', {}), **kwargs}
    return register_fct_.fct(**register_kwargs)

def run_suite(name, **kwargs):
    """Run a verification suite given its command line name or register name."""
    fct = register.suite_names.get(name, name)
    return read_config(Dict(fct=fct, kwargs=Dict()), register.suites, **kwargs)

#---------------------------------------------------------------------------
# walls and grids

def load_wall(path):
    """BackWall of a wall file."""
    dic = load_wall_file(path)
    return BackWall(dic.corners, dic.slopes, anchor=dic.anchor)

def parse_window(window):
    """'tmin:tmax:cmin:cmax' or a 4-sequence to a tuple of floats."""
    if window is None: return None
    if isinstance(window, str):
        window = window.split(':')
    assert len(window)==4, "[Error] A window needs tau_min:tau_max:chi_min:chi_max, got {}".format(window)
    window = tuple(float(v) for v in window)
    assert window[0] < window[1] and window[2] < window[3], "[Error] Empty window {}".format(window)
    return window

def parse_grid(grid):
    """'WxH' or a 2-sequence to (n_tau, n_chi)."""
    if isinstance(grid, str):
        grid = grid.lower().split('x')
    assert len(grid)==2, "[Error] A grid needs WxH, got {}".format(grid)
    grid = tuple(int(v) for v in grid)
    assert min(grid) >= 2, "[Error] A grid needs at least 2 points per axis."
    return grid

def default_window(w, chi_cap):
    """Wall extent widened by 10% in tau, from the wall's lowest point to chi_cap in chi."""
    V, h = w.corners, w.heights
    pad = 0.1*(V[-1]-V[0])
    return (V[0]-pad, V[-1]+pad, 0.5*h.min()-pad, min(chi_cap, 0.5*h.max()+(V[-1]-V[0])))

def grid_axes(w, grid, window=None, chi_cap=50.):
    """tau and chi axes of a grid over the window."""
    window = default_window(w, chi_cap) if window is None else window
    return np.linspace(window[0], window[1], grid[0]), np.linspace(window[2], window[3], grid[1])

#---------------------------------------------------------------------------
