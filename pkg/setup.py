import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The compiled kernels are optional: without Cython (or with
# PGIDEALS_NO_EXT set) the package installs pure-Python and selects the
# fallback backend at import time.
extensions = []
if cythonize is not None and not os.environ.get("PGIDEALS_NO_EXT"):
    extensions = cythonize(
        [
            Extension(
                "pgideals._kernels_c",
                ["src/pgideals/_kernels_c.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=extensions)
