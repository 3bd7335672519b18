"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure-Python kernel is selected
at import time); the build therefore tolerates a missing compiler or a
missing Cython and simply ships pure.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "ncode._ckernel",
                ["src/ncode/_ckernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
