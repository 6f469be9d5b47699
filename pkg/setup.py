"""Build script: compiles the optional native kernel extension.

The package is fully functional without the extension (a NumPy fallback is
selected at import time), so any build failure here degrades to a pure
install instead of aborting.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext = Extension(
        "resnoise._kernels._native",
        sources=["src/resnoise/_kernels/_native.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    ext_modules = cythonize(
        [ext],
        compiler_directives={"language_level": "3", "boundscheck": False,
                             "wraparound": False, "cdivision": True},
    )
except Exception as exc:  # noqa: BLE001 - degrade to pure install
    print(f"resnoise: skipping native kernels ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
