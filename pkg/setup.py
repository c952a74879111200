import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "coxreg.kernels._ckernel",
                ["src/coxreg/kernels/_ckernel.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Cython unavailable: the pure-Python kernel is selected at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
