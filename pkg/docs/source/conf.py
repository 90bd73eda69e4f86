# Sphinx configuration for the twopoint docs.
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parents[2] / "src"))

project = "twopoint"
copyright = "2026, twopoint developers"
author = "twopoint developers"
release = "v0.1.0"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.doctest",
    "sphinx.ext.napoleon",
    "sphinx.ext.intersphinx",
    "sphinx.ext.autosectionlabel",
    "sphinx.ext.mathjax",
    "myst_parser",
    "sphinx_copybutton",
    "sphinx_autodoc_typehints",
]

intersphinx_mapping = {
    "python": ("https://docs.python.org/3.11", None),
    "numpy": ("https://numpy.org/doc/stable", None),
    "scipy": ("https://docs.scipy.org/doc/scipy", None),
}

autodoc_member_order = "bysource"
autodoc_type_aliases = {"FloatArray": "twopoint._typing.FloatArray", "PointLike": "twopoint._typing.PointLike"}
typehints_defaults = "comma"
napoleon_google_docstring = True
napoleon_numpy_docstring = False

# Docstring examples: sphinx-build -b doctest docs/source docs/_build
doctest_global_setup = "import numpy as np\nfrom twopoint.models import model"
autosectionlabel_prefix_document = True
myst_enable_extensions = ["dollarmath"]

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

html_theme = "furo"
html_title = "twopoint"
