"""Build script for the optional compiled kernel extension.

The package is fully functional without the extension: the kernel loader
falls back to pure-Python implementations of the same routines.  Building
with Cython is attempted and skipped (with a notice) if unavailable.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "astopo._kernels._speed",
                ["src/astopo/_kernels/_speed.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
            "cdivision": True,
        },
    )
else:
    print("Cython not available; installing with pure-Python kernels only")
    extensions = []

setup(ext_modules=extensions)
