"""Build script: compiles the optional speedup extension.

The package is fully functional without the extension (a pure-Python
implementation of the same kernels is selected at import time), so a
failed compile only costs speed, not correctness.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "burniat._kernels._speedups",
                ["src/burniat/_kernels/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
