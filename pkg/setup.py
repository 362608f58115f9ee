"""Build script for the compiled round kernel.

The extension is optional: if Cython (or a C compiler) is unavailable the
package installs without it and ceopt._kernels falls back to the pure-Python
backend at import time.

-ffp-contract=off keeps the C arithmetic bit-identical to the Python
fallback (no FMA contraction); do not add -ffast-math.
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "ceopt._kernels._native",
                ["src/ceopt/_kernels/_native.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3", "-ffp-contract=off"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
