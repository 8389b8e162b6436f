"""Build hook for the compiled kernel extension.

The package works without the extension (bqf.kernels falls back to the
pure Python implementations), so a failed compile only costs speed.
"""

import os
import sys

from setuptools import Extension, setup

PYX = os.path.join("src", "bqf", "_core.pyx")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("bqf: Cython not available, building without compiled kernels",
              file=sys.stderr)
        return []
    if not os.path.exists(PYX):
        print("bqf: %s missing, building without compiled kernels" % PYX,
              file=sys.stderr)
        return []
    return cythonize(
        [
            Extension(
                "bqf._core",
                [PYX],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions())
