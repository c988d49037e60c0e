import os

from setuptools import Extension, setup

# The extension is optional: without Cython/numpy headers the package still
# installs and runs on the pure-Python kernels.
ext_modules = []
if os.environ.get("NESTEDSAT_PURE_PYTHON") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "nestedsat._ckernels",
                    ["src/nestedsat/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
