"""Build shim: compiles the optional quadrature kernel extension.

The package works without the extension (a pure-Python fallback is selected
at import time), so a failed compile only costs speed, never functionality.
Set FOURGAMMA_NO_EXT=1 to skip the compile step entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, cython failure, ...
            print(f"warning: compiled kernel skipped ({exc}); "
                  "using the pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: {ext.name} skipped ({exc}); "
                  "using the pure-Python fallback")


def extensions():
    if os.environ.get("FOURGAMMA_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [
            Extension(
                "fourgamma._kernels",
                ["src/fourgamma/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
