import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The compiled kernels are optional: if Cython or a C compiler is missing the
# package installs anyway and falls back to the numpy implementations.
if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "maxkcut._kernels._core",
                ["src/maxkcut/_kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            )
        ],
        language_level="3",
    )
else:
    extensions = []

setup(ext_modules=extensions)
