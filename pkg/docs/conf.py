# Configuration file for the Sphinx documentation builder.
#
# Full list of options:
# http://www.sphinx-doc.org/en/master/config

import os
import sys

sys.path.insert(0, os.path.abspath(".."))

# -- Project information -----------------------------------------------------

project = "libtrisub"
copyright = "libtrisub developers (2026)"
author = "libtrisub developers"
version = "0.1"
release = "0.1"

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.doctest",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "sphinx.ext.napoleon",
]
templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"
language = None
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]
pygments_style = "sphinx"

# svgwrite and mpmath are only needed at run time
autodoc_mock_imports = ["svgwrite", "mpmath"]

# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"
html_static_path = ["_static"]
htmlhelp_basename = "trisubdoc"

# -- Options for LaTeX / manual / Texinfo output -----------------------------

latex_documents = [
    (master_doc, "trisub.tex", "libtrisub documentation", author, "manual"),
]
man_pages = [(master_doc, "trisub", "libtrisub documentation", [author], 1)]
texinfo_documents = [
    (
        master_doc,
        "trisub",
        "libtrisub documentation",
        author,
        "trisub",
        "Exact enumeration of rational-angle triangle subdivisions.",
        "Miscellaneous",
    ),
]
