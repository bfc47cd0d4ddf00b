# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.
# http://www.sphinx-doc.org/en/master/config
import os
import sys

sys.path.insert(0, os.path.abspath('..'))

# -- Project information -----------------------------------------------------

project = 'hiercloth'
copyright = '2025-2026, The hiercloth Contributors'
author = 'The hiercloth Contributors'

version = ''
release = ''

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.viewcode',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'
language = None
exclude_patterns = ['build']
pygments_style = None

# -- Options for HTML output -------------------------------------------------

on_rtd = os.environ.get('READTHEDOCS', None) == 'True'

if not on_rtd:  # only import and set the theme if we're building docs locally
    import sphinx_rtd_theme
    html_theme = "sphinx_rtd_theme"
    html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]

html_static_path = []
htmlhelp_basename = 'hierclothDoc'

# -- Options for other output ------------------------------------------------

latex_documents = [
    (master_doc, 'hiercloth.tex', 'hiercloth Documentation', author, 'manual'),
]

man_pages = [
    (master_doc, 'hiercloth', 'hiercloth Documentation', [author], 1)
]

texinfo_documents = [
    (master_doc, 'hiercloth', 'hiercloth Documentation', author, 'hiercloth',
     'Hierarchical cloth simulation with per-level neural upsampling', 'Miscellaneous'),
]

epub_title = project
epub_exclude_files = ['search.html']
