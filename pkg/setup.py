"""Build hook: compile the optional Cython kernel if a toolchain is available.

The package works without the extension (a NumPy fallback is selected at
import time), so any build failure here downgrades to a warning.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # toolchain missing or broken
            warnings.warn(f"skipping compiled kernels: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping {ext.name}: {exc}")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("pathabs._kernels._fast", ["src/pathabs/_kernels/_fast.pyx"])],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
