"""Build script: compiles the optional geometry kernel extension when Cython
and a C toolchain are available.  The package falls back to the pure-Python
kernels at import time when the extension is missing, so a failed build is
never fatal (set COLAYOUT_NO_EXT=1 to skip the attempt entirely)."""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("COLAYOUT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "colayout.geom._kernels_c",
                    ["src/colayout/geom/_kernels_c.pyx"],
                    optional=True,
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
