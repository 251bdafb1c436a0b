"""Build script. Compiles the optional Cython solver kernels.

Set CURRIALIGN_NO_EXT=1 to skip the extension; the package falls back to the
pure-Python kernels at import time.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CURRIALIGN_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "currialign.optimize._speedups",
                    ["src/currialign/optimize/_speedups.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
