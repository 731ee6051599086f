import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "malmquist._ckernels",
        ["src/malmquist/_ckernels.pyx"],
        include_dirs=[np.get_include()],
        # plain complex multiply: inputs are finite, so the C99 inf/nan recovery is dead weight
        extra_compile_args=["-O3", "-fcx-limited-range"],
        # a failed compile leaves the numpy fallback in charge
        optional=True,
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
)
