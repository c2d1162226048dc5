"""Build script: compiles the optional fast-path extension when a toolchain
is available and falls back to the pure-Python lane otherwise.

The package is fully functional without the extension; satgrid._kernels
selects the lane at import time.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/satgrid/_satcore.pyx"],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except Exception as exc:  # noqa: BLE001 - any build-chain failure degrades gracefully
    sys.stderr.write(f"satgrid: skipping compiled extension ({exc}); using pure-Python lane\n")
    ext_modules = []

setup(ext_modules=ext_modules)
