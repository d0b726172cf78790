"""Build script: compiles the optional F_p term-arithmetic kernel.

The package is fully functional without the extension; the pure-Python
twin in dfactor._kernel.pure is selected at import when the compiled
module is absent.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "dfactor._kernel._speedups",
                ["src/dfactor/_kernel/_speedups.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
