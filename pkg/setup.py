import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # No Cython at build time: install the pure-NumPy backend only.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "qwell._speedups",
                ["src/qwell/_speedups.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
