"""Builds the optional truth-table extension.

The package works without it (a pure-Python kernel is selected at import
time), so a missing compiler only costs speed. Set CLAIMGRAPH_NO_EXT=1 to
skip the extension build entirely.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("CLAIMGRAPH_NO_EXT"):
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "claimgraph._ttable",
                ["src/claimgraph/_ttable.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
