import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

# The extension is optional: the package falls back to numpy kernels when it is absent.
setup(
    ext_modules=cythonize(
        [
            Extension(
                name="steenhit._kernels",
                sources=["src/steenhit/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )
)
