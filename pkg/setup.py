"""Build script for the optional compiled kernel extension.

The package is pure Python plus one accelerator module,
``sawcavity.kernels._compiled``, generated from Cython sources. The
extension is a pure speed-up: every exported function has a NumPy
implementation in ``sawcavity.kernels.pure`` with identical semantics,
and the package selects whichever is importable at run time. A build
without Cython or without a working C compiler therefore still yields
a fully functional install.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


def _extensions():
    if os.environ.get("SAWCAVITY_NO_EXTENSION") == "1":
        return []
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    ext = Extension(
        "sawcavity.kernels._compiled",
        sources=["src/sawcavity/kernels/_compiled.pyx"],
    )
    return cythonize(
        [ext],
        language_level=3,
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


class OptionalBuildExt(build_ext):
    """Treat compiler failure as a degraded install, not an error."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing or broken
            print(f"warning: compiled kernels skipped ({exc}); "
                  "falling back to pure NumPy backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "falling back to pure NumPy backend")


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
