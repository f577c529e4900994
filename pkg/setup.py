"""Build script.

The compiled extension diophlab._fastpath is optional: if Cython or a C
compiler is unavailable the package installs anyway and falls back to
diophlab._purepath (same integer semantics, slower).
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing / broken toolchain
            print(f"warning: building diophlab._fastpath failed ({exc}); "
                  "using pure-Python kernels")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: {ext.name} failed to compile ({exc}); "
                  "using pure-Python kernels")


ext_modules = []
if os.environ.get("DIOPHLAB_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("diophlab._fastpath", ["src/diophlab/_fastpath.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
