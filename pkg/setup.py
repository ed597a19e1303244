"""Build the optional Cython kernels.

The extension is optional: if Cython or a C compiler is unavailable the
package installs anyway and falls back to the pure-Python kernels.
"""
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: skipping compiled kernels ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: failed to build {ext.name} ({exc})", file=sys.stderr)


def extensions():
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    try:
        return _cythonize(cythonize, Extension, np)
    except Exception as exc:  # noqa: BLE001
        print(f"warning: cythonize failed ({exc})", file=sys.stderr)
        return []


def _cythonize(cythonize, Extension, np):
    return cythonize(
        [
            Extension(
                "fixlab._ckernels",
                ["src/fixlab/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
