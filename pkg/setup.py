import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

ext = Extension(
    "rigidwarp._kernels_cy",
    ["src/rigidwarp/_kernels_cy.pyx"],
    include_dirs=[np.get_include()],
    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    # fused multiply-add would break bit-parity with the numpy backend
    extra_compile_args=["-ffp-contract=off"],
)

setup(ext_modules=cythonize([ext], language_level=3))
