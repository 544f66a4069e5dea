#---------------------------------------------------------------------------
# Configuration file.
# Copy it and edit it as much as you want! :)
#
# FORMATTING DETAILS:
# Each key and values must be written with the format: KEY = value
# Do not forget the spaces before and after the '=' symbol! Command line
# flags of skewwall.cli override the values written here.
#---------------------------------------------------------------------------

############################################################################
# handy class for dictionary

class Dict(dict):
    def __init__(self, *args, **kwargs): super().__init__(*args, **kwargs)
    def __getattr__(self, name): return self[name]
    def __setattr__(self, name, value): self[name] = value
    def __delattr__(self, name): del self[name]

############################################################################

#---------------------------------------------------------------------------
# Inputs and outputs

# Path to the wall file (JSON with "corners", "slopes" and optional "anchor")
WALL = None

# Output folder, a sub-folder named DESC is created inside
OUT_DIR = 'out'

# Name of the run
DESC = 'run'

# Output format: 'csv' or 'svg' (svg also writes the csv)
FORMAT = 'svg'

# Seed of every random generator
SEED = 0

# No progress bars nor messages
QUIET = False

#---------------------------------------------------------------------------
# Numerical tolerances

# Newton residual on the critical point equation
ROOT_TOL = 1e-10

# A root z counts as non-real when Im z / (distance to the nearest branch point) exceeds this
NONREAL_TOL = 1e-8

#---------------------------------------------------------------------------
# Critical points

# Height from which the homotopy in chi starts
CHI_BIG = 20.

# Initial homotopy step, halved on divergence
CHI_STEP = 0.25

#---------------------------------------------------------------------------
# Frozen boundary

# Traced curves are clipped at this height
CHI_CAP = 50.

# Number of z samples per interval of the domain U
SAMPLES_PER_INTERVAL = 400

#---------------------------------------------------------------------------
# Grids

# Grid size (number of tau values, number of chi values)
GRID = (60, 60)

# Overlay the frozen boundary on density maps
OVERLAY = False

# Window tau_min:tau_max:chi_min:chi_max, None means the wall extent
WINDOW = None

#---------------------------------------------------------------------------
# Lattice walls and sampling

# Lattice scale r, q = exp(-r)
R = 0.025

# Tiny instance used by the sampler: box and removed partition
BOX = (2, 2)
PARTITION = (1,)
Q = 0.5

# Metropolis chain: burn-in proposals and number of thinned samples
STEPS = 1000000
N_SAMPLES = 1000
THIN = None      # None means 100 proposals per free cell

#---------------------------------------------------------------------------
# Verification suites
# 'fct' is a name of skewwall.register.suites

VERIFY = Dict(
    fct='FiniteVsBruteforce',
    kwargs=Dict(),
)

#---------------------------------------------------------------------------
# Raw config dictionary

CONFIG = Dict(**globals().copy())
