"""Build script: compiles the optional kernel accelerator when Cython and
a C toolchain are present, and degrades to the pure-Python backend
otherwise.  All metadata lives in pyproject.toml."""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Never fail the install over the accelerator."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._skip(exc)

    @staticmethod
    def _skip(exc):
        print(
            "quivshuf: compiled kernel skipped (%s); "
            "the pure-Python backend will be used" % exc
        )


ext_modules = []
if not os.environ.get("QUIVSHUF_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/quivshuf/_kernel/poly_cy.pyx"],
            language_level=3,
        )
    except Exception as exc:
        OptionalBuildExt._skip(exc)

setup(cmdclass={"build_ext": OptionalBuildExt}, ext_modules=ext_modules)
