"""Build script: compiles the optional speedup extension when Cython is available.

The package is fully functional without the extension (a pure-Python kernel
module is selected at import time); the extension only accelerates the hot
enumeration and table-scan loops.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "zcverify._speedups",
                ["src/zcverify/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
