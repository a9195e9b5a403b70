"""Build script for the compiled rotation kernels.

The package works without the extension (a NumPy fallback is selected at
import time), so a failed compilation downgrades to a warning instead of
aborting the install.
"""

import sys

from setuptools import setup

try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    extensions = cythonize(
        [
            Extension(
                "ritzbounds._kernels_cy",
                sources=["src/ritzbounds/_kernels_cy.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    sys.stderr.write(
        "ritzbounds: could not set up the Cython extension (%s); "
        "installing with the pure-Python kernels only\n" % exc
    )
    extensions = []

setup(ext_modules=extensions)
