from setuptools import setup, Extension

import numpy as np

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext = Extension(
        "fracgaussiso._kernels",
        ["src/fracgaussiso/_kernels.pyx"],
        include_dirs=[np.get_include()],
        # -ffp-contract=off keeps the compiled kernels bit-compatible with
        # the pure-Python fallback (no FMA reassociation).
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
    ext_modules = cythonize([ext], language_level=3)

setup(ext_modules=ext_modules)
