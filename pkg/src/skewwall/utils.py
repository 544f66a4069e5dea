# ----------------------------------------------------------------------------
# a set of utility functions
# content:
#  - error classes
#  - base class for config file
#  - wall file reader and writer
#  - create output directories
#  - timer
# ----------------------------------------------------------------------------

import numpy as np
from time import time
import os
import importlib.util
import sys
import json
import yaml # pip install pyyaml

# ----------------------------------------------------------------------------
# errors
# every error raised on purpose by skewwall derives from SkewWallError

class SkewWallError(RuntimeError):
    """Base class of all skewwall errors."""

class WallError(SkewWallError, ValueError):
    """Invalid back wall."""

class NonIncreasingCorners(WallError): pass
class SlopeOutOfRange(WallError): pass
class EqualAdjacentSlopes(WallError): pass
class ScaleTooCoarse(WallError): pass
class WallFileError(WallError): pass

class PoleAt(SkewWallError):
    """Evaluation point sits on a pole. `where` keeps the offending location."""
    def __init__(self, msg, where=None):
        super().__init__(msg)
        self.where = where

class BranchPoint(SkewWallError): pass
class DomainViolation(SkewWallError, ValueError): pass
class ImaginaryResidue(SkewWallError): pass

class QuadratureFailure(SkewWallError):
    """Adaptive quadrature did not reach its tolerance."""
    def __init__(self, msg, error_estimate=None):
        super().__init__(msg)
        self.error_estimate = error_estimate

class CertificationMismatch(SkewWallError): pass
class NearBoundary(SkewWallError): pass
class LatticeSlopeSegment(SkewWallError, ValueError): pass
class NoConvergence(SkewWallError): pass
class NoSignChange(SkewWallError): pass
class ZeroFactor(SkewWallError): pass
class ContourPinch(SkewWallError): pass
class ToleranceNotMet(SkewWallError): pass
class PathThroughPole(SkewWallError): pass
class TooLarge(SkewWallError): pass
class EmptySampleSet(SkewWallError, ValueError): pass
class SuiteUnknown(SkewWallError, KeyError): pass

# ----------------------------------------------------------------------------
# config utils
# Convenience class that behaves exactly like dict(), but allows accessing
# the keys and values using the attribute syntax, i.e., "mydict.key = value".
# Author: Terro Keras (progressive_growing_of_gans)

class Dict(dict):
    def __init__(self, *args, **kwargs): super().__init__(*args, **kwargs)
    def __getattr__(self, name):
        try: return self[name]
        except KeyError: raise AttributeError(name)
    def __setattr__(self, name, value): self[name] = value
    def __delattr__(self, name): del self[name]

def config_to_type(cfg, new_type):
    """Change config type to a new type. This function is recursive and can be use to change the type of nested dictionaries.
    """
    cfg = new_type(cfg)
    for k,i in cfg.items():
        if isinstance(i, dict):
            cfg[k] = config_to_type(cfg[k], new_type)
    return cfg

def _to_builtin(value):
    """numpy scalars and arrays are not yaml friendly."""
    if isinstance(value, np.ndarray): return value.tolist()
    if isinstance(value, np.generic): return value.item()
    if isinstance(value, tuple): return [_to_builtin(v) for v in value]
    return value

def save_yaml_config(path, cfg):
    """
    save a configuration in a yaml file.
    path must thus contains a yaml extension.
    example: path='out/run.yaml'
    Callables (registered functions) are stored by name.
    """
    cfg = config_to_type(cfg, dict)
    def clean(dic):
        out = {}
        for k,v in dic.items():
            if isinstance(v, dict): out[k] = clean(v)
            elif callable(v): out[k] = getattr(v, '__name__', str(v))
            else: out[k] = _to_builtin(v)
        return out
    with open(path, "w") as f:
        yaml.dump(clean(cfg), f, sort_keys=False)

def load_yaml_config(path):
    """
    load a yaml stored with save_yaml_config.
    """
    with open(path) as f:
        return config_to_type(yaml.load(f, Loader=yaml.FullLoader), Dict)

def load_python_config(config_path):
    """Return the configuration dictionary given the path of the configuration file.
    The configuration file is in Python format and must define a global named CONFIG.

    Adapted from: https://stackoverflow.com/questions/67631/how-can-i-import-a-module-dynamically-given-the-full-path

    Parameters
    ----------
    config_path : str
        Path of the configuration file. Should have the '.py' extension.

    Returns
    -------
    cfg : skewwall.utils.Dict
        Dictionary of the config.
    """
    spec = importlib.util.spec_from_file_location("config", config_path)
    config = importlib.util.module_from_spec(spec)
    sys.modules["config"] = config
    spec.loader.exec_module(config)
    return config_to_type(config.CONFIG, Dict) # change type from config.Dict to Dict

def adaptive_load_config(config_path):
    """Return the configuration dictionary given the path of the configuration file.
    The configuration file is in Python or YAML format.

    Parameters
    ----------
    config_path : str
        Path of the configuration file. Should have the '.py', '.yaml' or '.yml' extension.

    Returns
    -------
    cfg : skewwall.utils.Dict
        Dictionary of the config.
    """
    extension = os.path.splitext(config_path)[1]
    if extension=='.py':
        return load_python_config(config_path=config_path)
    elif extension in ('.yaml', '.yml'):
        return load_yaml_config(path=config_path)
    else:
        print("[Error] Unknow format for config file:", config_path)
        raise SkewWallError("unknown config format: {}".format(extension))

def merge_config(cfg, **overrides):
    """Return a copy of the UPPERCASE keys of cfg where the keys given in overrides replace the defaults. None values are ignored so that unset command line flags keep the config value.
    """
    out = config_to_type({k:v for k,v in cfg.items() if k.isupper()}, Dict)
    for k,v in overrides.items():
        if v is not None: out[k.upper()] = v
    return out

# ----------------------------------------------------------------------------
# wall file reader and writer

def load_wall_file(path):
    """Read a wall file.

    The file is a JSON document with keys "corners", "slopes" and optionally "anchor".

    Parameters
    ----------
    path : str
        Path to the wall file.

    Returns
    -------
    dic : skewwall.utils.Dict
        Dictionary with the keys corners, slopes and anchor (None if absent).
    """
    try:
        with open(path, encoding='utf-8') as f:
            raw = json.load(f)
    except OSError as e:
        raise WallFileError("cannot read wall file {}: {}".format(path, e))
    except json.JSONDecodeError as e:
        raise WallFileError("wall file {} is not valid JSON: {}".format(path, e))
    if not isinstance(raw, dict) or 'corners' not in raw or 'slopes' not in raw:
        raise WallFileError("wall file {} must define 'corners' and 'slopes'".format(path))
    try:
        corners = [float(v) for v in raw['corners']]
        slopes = [float(v) for v in raw['slopes']]
        anchor = None if raw.get('anchor') is None else float(raw['anchor'])
    except (TypeError, ValueError) as e:
        raise WallFileError("wall file {} holds non numeric values: {}".format(path, e))
    return Dict(corners=corners, slopes=slopes, anchor=anchor)

def save_wall_file(path, corners, slopes, anchor=None):
    dic = {'corners': [float(v) for v in corners], 'slopes': [float(v) for v in slopes]}
    if anchor is not None: dic['anchor'] = float(anchor)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(dic, f, indent=2)

# ----------------------------------------------------------------------------
# create output directories

def create_save_dirs(out_dir, desc, dir_names=["csv", "svg"], return_base_dir=False):
    """
    Creates saving folders.

    Arguments:
        out_dir: root output folder.
        desc: name of the run, used as the folder name.
        dir_names: a list of name of the desired sub-folders.

    Returns:
        list_dirs: a list of path of the corresponding folders.
    """
    list_dirs = []
    base_dir = os.path.join(out_dir, desc)
    for name in dir_names:
        list_dirs += [os.path.join(base_dir, name)]
        os.makedirs(list_dirs[-1], exist_ok=True)
    if return_base_dir:
        return [base_dir] + list_dirs
    else:
        return list_dirs

# ----------------------------------------------------------------------------
# timer

class Time:
    """Wall clock of a named step. str() reports the time since the last report."""
    def __init__(self, name=None):
        self.name = name
        self.count = 0
        self.start_time = time()

    def elapsed(self):
        return time()-self.start_time

    def __str__(self):
        self.count += 1
        out = self.elapsed()
        self.start_time = time()
        return "[Info] {} ({}): {:.3f} seconds".format(self.name, self.count, out)

# ----------------------------------------------------------------------------
