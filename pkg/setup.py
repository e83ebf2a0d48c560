"""Build script: compiles the optional elimination speedup extension.

The package is fully functional without the extension (a pure-Python
backend is selected at import time), so a failed compile only costs speed.
"""

import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


def _extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython/numpy unavailable; building without the compiled kernel")
        return [], []
    from setuptools import Extension

    ext = Extension(
        "u4class.kernels._speedups",
        sources=["src/u4class/kernels/_speedups.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        language="c++",
    )
    return cythonize([ext], language_level=3), []


class OptionalBuildExt(build_ext):
    """Degrade to a pure-Python install if the extension fails to compile."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            warnings.warn(f"compiled kernel skipped: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            warnings.warn(f"compiled kernel skipped: {exc}")


exts, _ = _extensions()
setup(ext_modules=exts, cmdclass={"build_ext": OptionalBuildExt})
