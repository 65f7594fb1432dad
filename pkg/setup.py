"""Build script.

Compiles the direct-convolution extension when Cython and a C toolchain are
available.  The package works without it: the engine selector falls back to
a NumPy implementation at import time, so a failed extension build degrades
performance, not behavior.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Treat extension build failures as a warning, not a fatal error."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, link failure, ...
            warnings.warn(f"extension build failed ({exc}); NumPy fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"building {ext.name} failed ({exc}); NumPy fallback will be used")


ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("artifact._fastconv", ["src/artifact/_fastconv.pyx"])],
        language_level="3",
    )
except ImportError:
    warnings.warn("Cython not available; installing with the NumPy fallback engine")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
