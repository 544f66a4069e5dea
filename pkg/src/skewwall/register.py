#---------------------------------------------------------------------------
# A register for the verification suites
# Aim of this module:
# - to gather all suites in a single file
# - to use it in colaboration with a config file
#---------------------------------------------------------------------------

from skewwall.utils import Dict

#---------------------------------------------------------------------------
# suite register

import skewwall.verify as vf

suites = Dict(
    FiniteVsBruteforce  =Dict(fct=vf.finite_vs_bruteforce, kwargs=Dict()),
    McmcVsKernel        =Dict(fct=vf.mcmc_vs_kernel, kwargs=Dict()),
    PhiConvergence      =Dict(fct=vf.phi_convergence, kwargs=Dict()),
    SchemeIndependence  =Dict(fct=vf.scheme_independence, kwargs=Dict()),
    DensityConvergence  =Dict(fct=vf.density_convergence, kwargs=Dict()),
    FrozenRule          =Dict(fct=vf.frozen_rule, kwargs=Dict()),
    Certification       =Dict(fct=vf.certification, kwargs=Dict()),
    CuspCount           =Dict(fct=vf.cusp_count, kwargs=Dict()),
)

# command line names
suite_names = Dict({
    'finite-vs-bruteforce'  :'FiniteVsBruteforce',
    'mcmc-vs-kernel'        :'McmcVsKernel',
    'phi-convergence'       :'PhiConvergence',
    'scheme-independence'   :'SchemeIndependence',
    'density-convergence'   :'DensityConvergence',
    'frozen-rule'           :'FrozenRule',
    'certification'         :'Certification',
    'cusp-count'            :'CuspCount',
})

#---------------------------------------------------------------------------
