"""Build script: compiles the optional statevector kernel extension.

The extension is best-effort.  If Cython or a C compiler is unavailable the
package installs pure-Python and `vqexc.kernels` falls back to the numpy
implementation at import time.  Set VQEXC_SKIP_EXTENSION=1 to force a
pure-Python install.
"""

import os

from setuptools import Extension, setup


def extensions():
    if os.environ.get("VQEXC_SKIP_EXTENSION") == "1":
        return []
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "vqexc._kernels",
        sources=["src/vqexc/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level="3")


setup(ext_modules=extensions())
