"""Builds the optional compiled search kernel; the package falls back to
pure Python when the extension is unavailable."""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("PSEUDOTRAP_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "pseudotrap._ckernel",
                    ["src/pseudotrap/_ckernel.pyx"],
                    language="c++",
                    extra_compile_args=["-O3", "-std=c++17"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
