#---------------------------------------------------------------------------
# Configuration file.
# Copy it and edit it as much as you want! :)
#
# FORMATTING DETAILS:
# Each key and values must be written with the format: KEY = value
# Do not forget the spaces before and after the '=' symbol! Keys missing
# here must be given on the command line when a command needs them.
#
# Example:
#   skewwall trace --config configs/two_cusps_example.py
#   skewwall verify cusp-count --config configs/two_cusps_example.py
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

# back wall with two cusps and three boundary components
WALL = 'configs/walls/two_cusps.json'

OUT_DIR = 'out'
DESC = 'two_cusps'
FORMAT = 'svg'
SEED = 42
QUIET = False

#---------------------------------------------------------------------------
# Numerical tolerances

ROOT_TOL = 1e-10
NONREAL_TOL = 1e-8

CHI_BIG = 20.
CHI_STEP = 0.25

#---------------------------------------------------------------------------
# Frozen boundary and grids

CHI_CAP = 6.
SAMPLES_PER_INTERVAL = 600

GRID = (80, 60)
OVERLAY = True
# tau_min:tau_max:chi_min:chi_max
WINDOW = '-0.5:3.5:-0.5:4'

#---------------------------------------------------------------------------
# Lattice walls and sampling

R = 0.003

BOX = (2, 2)
PARTITION = (2, 1)
Q = 0.3

STEPS = 400000
N_SAMPLES = 5000
THIN = None

#---------------------------------------------------------------------------
# Verification suites

VERIFY = Dict(
    fct='CuspCount',
    kwargs=Dict(),
)

#---------------------------------------------------------------------------
# Raw config dictionary

CONFIG = Dict(**globals().copy())
