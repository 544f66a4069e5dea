# Configuration file for the Sphinx documentation builder.
#
# Full list of options can be found in the Sphinx documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Project information -----------------------------------------------------

project = "skewwall"
copyright = "2026, skewwall developers"
author = "skewwall developers"

# -- General configuration ---------------------------------------------------

extensions = [
    # Sphinx's own extensions
    "sphinx.ext.autodoc",
    'sphinx.ext.napoleon', # for Numpy DocString style
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    # External stuff
    "myst_parser",
    "sphinx_copybutton",
    "sphinx_design",
]

master_doc = 'index'

napoleon_numpy_docstring = True
napoleon_include_init_with_doc = True

# numba is not needed to render the API pages
autodoc_mock_imports = ["numba"]

myst_enable_extensions = [
    "colon_fence",
    "deflist",
    "dollarmath",
]
myst_heading_anchors = 3

# -- Options for HTML output -------------------------------------------------

html_theme = "furo"

html_title = "skewwall"
language = "en"

copybutton_prompt_text = r'>>> |\.\.\. |\$ '
copybutton_prompt_is_regexp = True
