# Configuration file for the Sphinx documentation builder.

import os
import sys
sys.path.insert(0, os.path.abspath('../..'))


# -- Project information -----------------------------------------------------

project = 'ifbs'
copyright = '2026, ifbs developers'
author = 'ifbs developers'

version = '0.1.0'
release = '0.1.0'


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.mathjax',
    'sphinx.ext.napoleon'
]

source_suffix = '.rst'
master_doc = 'index'
exclude_patterns = []
pygments_style = 'sphinx'


# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
htmlhelp_basename = 'ifbsdoc'

autodoc_member_order = 'bysource'


# -- Options for LaTeX and manual page output ---------------------------------

latex_documents = [
    (master_doc, 'ifbs.tex', 'ifbs Documentation', author, 'manual'),
]

man_pages = [
    (master_doc, 'ifbs', 'ifbs Documentation', [author], 1)
]
