"""Sphinx configuration"""

import os
import sys
import sphinx_glpi_theme

sys.path.insert(0, os.path.abspath('../..'))

project = 'surface-sections'
copyright = '2026, The surface-sections Authors'  # pylint: disable=redefined-builtin
author = 'The surface-sections Authors'

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.viewcode',
]

napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_use_param = False
napoleon_use_rtype = False

html_theme = 'glpi'
html_theme_path = sphinx_glpi_theme.get_html_themes_path()

master_doc = 'index'
