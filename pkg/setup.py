"""Build script: compiles the optional integer-kernel speedup extension.

The package is fully functional without the extension (a pure-Python fallback
with identical semantics is selected at import time), so any compilation
failure downgrades to a plain install instead of aborting.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: speedup extension skipped ({exc}); using pure-Python kernels")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); using pure-Python kernels")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available; using pure-Python kernels")
        return []
    return cythonize(
        [Extension("conecuts.kernels._speedups", ["src/conecuts/kernels/_speedups.pyx"])],
        language_level="3",
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
