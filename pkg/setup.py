import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# -ffp-contract=off keeps a*b+c from fusing, so results match the numpy backend.
compile_args = ["-O3", "-ffp-contract=off", "-fno-fast-math"]
link_args = []
if os.environ.get("AGENTHEAT_NO_OPENMP") is None:
    compile_args.append("-fopenmp")
    link_args.append("-fopenmp")

ext_modules = []
if cythonize is not None and os.environ.get("AGENTHEAT_PURE_PYTHON") is None:
    ext_modules = cythonize(
        [
            Extension(
                "agentheat._ckernel",
                ["src/agentheat/_ckernel.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=compile_args,
                extra_link_args=link_args,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
