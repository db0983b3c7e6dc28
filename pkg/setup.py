"""Build script: compiles the optional accelerator extension.

The extension is marked optional; if the build fails (no C compiler, no
Cython) the package installs with the pure-Python kernels only.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "polycert._kernels",
                ["src/polycert/_kernels.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
