#---------------------------------------------------------------------------
# Command line interface
# subcommands: trace, density, classify, cusps, sample, verify
# exit codes: 0 pass, 1 verification failure, 2 usage or config error
#---------------------------------------------------------------------------

import os
import sys
import argparse
import numpy as np
import pandas as pd

from skewwall import builder
from skewwall import config_default
from skewwall import register
from skewwall.boundary import trace_components, components_to_frame, find_cusps
from skewwall.critical import classify_grid
from skewwall.kernel import density_grid
from skewwall.sampler import mcmc_chain, save_samples, tiles_frame
from skewwall.utils import (
    Dict,
    Time,
    SkewWallError,
    WallError,
    SuiteUnknown,
    adaptive_load_config,
    merge_config,
    save_yaml_config,
    create_save_dirs,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

#---------------------------------------------------------------------------
# helpers

def _log(cfg, *msg):
    if not cfg.get('QUIET', False): print(*msg)

def _wall(cfg):
    if cfg.WALL is None:
        raise WallError("this command needs a wall file, use --wall")
    return builder.load_wall(cfg.WALL)

def _dirs(cfg):
    base_dir, csv_dir, svg_dir = create_save_dirs(cfg.OUT_DIR, cfg.DESC, dir_names=['csv', 'svg'], return_base_dir=True)
    save_yaml_config(os.path.join(base_dir, 'config.yaml'), cfg)
    return csv_dir, svg_dir

def _svg(cfg): return cfg.FORMAT=='svg'

def _classify_kwargs(cfg):
    return Dict(root_tol=cfg.ROOT_TOL, nonreal_tol=cfg.NONREAL_TOL, chi_big=cfg.CHI_BIG, chi_step=cfg.CHI_STEP)

#---------------------------------------------------------------------------
# commands

def cmd_trace(cfg):
    """Frozen boundary CSV, and an SVG of the components with cusps and the wall."""
    w = _wall(cfg)
    csv_dir, svg_dir = _dirs(cfg)
    comps = trace_components(w, cfg.SAMPLES_PER_INTERVAL, cfg.CHI_CAP, verbose=not cfg.QUIET)
    n_cusps = sum(c.cusp is not None for c in comps)
    _log(cfg, "[Info] {} components, {} cusps.".format(len(comps), n_cusps))
    files = [os.path.join(csv_dir, 'boundary.csv')]
    components_to_frame(comps).to_csv(files[-1], index=False)
    if _svg(cfg):
        from skewwall.plots import plot_boundary
        files += [os.path.join(svg_dir, 'boundary.svg')]
        plot_boundary(w, comps, files[-1], builder.parse_window(cfg.WINDOW))
    return files

def cmd_density(cfg):
    """Density over a (tau, chi) grid as CSV and grayscale SVG heatmap."""
    w = _wall(cfg)
    csv_dir, svg_dir = _dirs(cfg)
    taus, chis = builder.grid_axes(w, builder.parse_grid(cfg.GRID), builder.parse_window(cfg.WINDOW), cfg.CHI_CAP)
    df = density_grid(w, taus, chis, verbose=not cfg.QUIET, **_classify_kwargs(cfg))
    files = [os.path.join(csv_dir, 'density.csv')]
    df.to_csv(files[-1], index=False)
    if _svg(cfg):
        from skewwall.plots import plot_density
        comps = trace_components(w, cfg.SAMPLES_PER_INTERVAL, cfg.CHI_CAP) if cfg.get('OVERLAY', False) else None
        files += [os.path.join(svg_dir, 'density.svg')]
        plot_density(df, files[-1], w, comps)
    return files

def cmd_classify(cfg):
    """Phase of every grid point as CSV and SVG."""
    w = _wall(cfg)
    csv_dir, svg_dir = _dirs(cfg)
    taus, chis = builder.grid_axes(w, builder.parse_grid(cfg.GRID), builder.parse_window(cfg.WINDOW), cfg.CHI_CAP)
    df = classify_grid(w, taus, chis, verbose=not cfg.QUIET, **_classify_kwargs(cfg))
    n_bad = int((df.phase=='mismatch').sum())
    if n_bad: _log(cfg, "[Warning] {} grid points failed certification.".format(n_bad))
    files = [os.path.join(csv_dir, 'phases.csv')]
    df.to_csv(files[-1], index=False)
    if _svg(cfg):
        from skewwall.plots import plot_phases
        files += [os.path.join(svg_dir, 'phases.svg')]
        plot_phases(df, files[-1], w)
    return files

def cmd_cusps(cfg):
    """Cusp table: z, tau, chi and the nearest corner index."""
    w = _wall(cfg)
    csv_dir, _ = _dirs(cfg)
    rows = [(z, tau, chi, int(np.argmin(np.abs(w.corners-tau)))) for z, tau, chi in find_cusps(w)]
    df = pd.DataFrame(rows, columns=['z', 'tau', 'chi', 'corner'])
    _log(cfg, "[Info] {} cusps.".format(len(df)))
    files = [os.path.join(csv_dir, 'cusps.csv')]
    df.to_csv(files[-1], index=False)
    return files

def cmd_sample(cfg):
    """Metropolis samples of the tiny instance: text dump and tile CSV."""
    csv_dir, _ = _dirs(cfg)
    c, d = cfg.BOX
    samples = mcmc_chain(cfg.PARTITION, c, d, cfg.Q, cfg.N_SAMPLES,
        burn_in=cfg.STEPS, thin=cfg.THIN, seed=cfg.SEED, verbose=not cfg.QUIET)
    files = [os.path.join(csv_dir, 'samples.txt'), os.path.join(csv_dir, 'tiles.csv')]
    save_samples(samples, files[0])
    tiles_frame(samples).to_csv(files[1], index=False)
    vol = np.mean([pi.volume for pi in samples])
    _log(cfg, "[Info] {} samples, mean volume {:.4f}.".format(len(samples), vol))
    return files

def _suite_kwargs(fct, cfg):
    kwargs = Dict(cfg.VERIFY.get('kwargs', {}))
    if fct in ('PhiConvergence', 'SchemeIndependence', 'DensityConvergence', 'Certification') and cfg.WALL is not None:
        kwargs.wall = builder.load_wall(cfg.WALL)
    if fct in ('PhiConvergence', 'SchemeIndependence', 'DensityConvergence'):
        kwargs.setdefault('rs', (4*cfg.R, 2*cfg.R, cfg.R))
    if fct=='McmcVsKernel':
        kwargs.setdefault('seed', cfg.SEED)
        kwargs.setdefault('q', cfg.Q)
    if fct in ('Certification', 'CuspCount', 'McmcVsKernel', 'FiniteVsBruteforce', 'DensityConvergence', 'FrozenRule'):
        kwargs.setdefault('verbose', not cfg.QUIET)
    return kwargs

def cmd_verify(cfg):
    """Run a verification suite and write its report. Returns the files and whether every check passed."""
    fct = register.suite_names.get(cfg.VERIFY.fct, cfg.VERIFY.fct)
    if fct not in register.suites:
        raise SuiteUnknown("unknown suite {}, valid suites: {}".format(cfg.VERIFY.fct, list(register.suite_names.keys())))
    csv_dir, _ = _dirs(cfg)
    t = Time(fct)
    df = builder.run_suite(fct, **_suite_kwargs(fct, cfg))
    _log(cfg, df.to_string(index=False))
    _log(cfg, t)
    files = [os.path.join(csv_dir, 'verify_{}.csv'.format(fct))]
    df.to_csv(files[-1], index=False)
    return files, bool(df.passed.all())

commands = Dict(
    trace=cmd_trace,
    density=cmd_density,
    classify=cmd_classify,
    cusps=cmd_cusps,
    sample=cmd_sample,
    verify=cmd_verify,
)

#---------------------------------------------------------------------------
# parser

def _partition(s):
    return tuple(int(v) for v in s.split(',') if v.strip())

def _box(s):
    return tuple(int(v) for v in s.lower().split('x'))

def get_parser():
    parser = argparse.ArgumentParser(prog='skewwall',
        description="Frozen boundaries, densities and correlations of q^volume skew plane partitions.")
    parser.add_argument("command", type=str, choices=list(commands.keys()),
        help="Command to run.")
    parser.add_argument("suite", type=str, nargs='?', default=None,
        help="Verification suite, only for the verify command. Valid names: {}".format(list(register.suite_names.keys())))
    parser.add_argument("-c", "--config", type=str, default=None,
        help="Path to a python or yaml run config. Flags override its values.")
    parser.add_argument("-w", "--wall", type=str, default=None, dest='wall',
        help="Path to the wall file.")
    parser.add_argument("--r", type=float, default=None,
        help="Lattice scale, q = exp(-r) when --q is not given.")
    parser.add_argument("--q", type=float, default=None,
        help="Weight per cube of the sampled instance.")
    parser.add_argument("--chi-cap", type=float, default=None, dest='chi_cap',
        help="Traced curves are clipped at this chi.")
    parser.add_argument("--grid", type=str, default=None,
        help="Grid size WxH (tau values x chi values).")
    parser.add_argument("--window", type=str, default=None,
        help="Window tmin:tmax:cmin:cmax.")
    parser.add_argument("--seed", type=int, default=None,
        help="Seed of the Metropolis chain.")
    parser.add_argument("--steps", type=int, default=None,
        help="Burn-in proposals of the Metropolis chain.")
    parser.add_argument("--samples", type=int, default=None, dest='n_samples',
        help="Number of thinned samples.")
    parser.add_argument("--box", type=_box, default=None,
        help="Box CxD of the sampled instance.")
    parser.add_argument("--partition", type=_partition, default=None,
        help="Removed partition as comma separated rows, e.g. 2,1.")
    parser.add_argument("-o", "--out", type=str, default=None, dest='out_dir',
        help="Output directory.")
    parser.add_argument("--desc", type=str, default=None,
        help="Name of the run, used as sub-folder name.")
    parser.add_argument("--format", type=str, default=None, choices=['csv', 'svg'],
        help="csv only, or csv and svg.")
    parser.add_argument("--tol", type=float, default=None, dest='root_tol',
        help="Newton residual tolerance.")
    parser.add_argument("--overlay", default=None, action='store_true',
        help="Overlay the frozen boundary on the density heatmap.")
    parser.add_argument("--quiet", default=False, action='store_true', dest='quiet',
        help="No progress bars nor messages.")
    return parser

def build_config(args):
    """Run config: defaults or --config, then command line flags."""
    cfg = config_default.CONFIG if args.config is None else adaptive_load_config(args.config)
    cfg = merge_config(cfg,
        wall=args.wall, q=args.q, r=args.r, chi_cap=args.chi_cap, grid=args.grid, window=args.window,
        seed=args.seed, steps=args.steps, n_samples=args.n_samples, box=args.box, partition=args.partition,
        out_dir=args.out_dir, desc=args.desc, format=args.format, root_tol=args.root_tol, overlay=args.overlay)
    cfg.QUIET = args.quiet or cfg.get('QUIET', False)
    if args.r is not None and args.q is None:
        cfg.Q = float(np.exp(-args.r))
    if args.suite is not None:
        cfg.VERIFY = Dict(fct=args.suite, kwargs=Dict(cfg.VERIFY.get('kwargs', {})))
    return cfg

def main(argv=None):
    parser = get_parser()
    args = parser.parse_args(argv)
    if args.suite is not None and args.command!='verify':
        parser.error("a suite name is only valid with the verify command")
    try:
        cfg = build_config(args)
        out = commands[args.command](cfg)
    except (WallError, SuiteUnknown, AssertionError) as e:
        print("[Error]", e, file=sys.stderr)
        return EXIT_USAGE
    except SkewWallError as e:
        print("[Error] {}: {}".format(type(e).__name__, e), file=sys.stderr)
        return EXIT_USAGE
    if args.command=='verify':
        files, passed = out
        if not passed:
            print("[Error] Verification failed, see {}".format(files[0]), file=sys.stderr)
            return EXIT_FAILED
        return EXIT_OK
    for f in out:
        if not args.quiet: print("[Info] Written:", f)
    return EXIT_OK

if __name__=='__main__':
    sys.exit(main())

#---------------------------------------------------------------------------
