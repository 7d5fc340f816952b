"""Build script: compiles the finite-field kernel when Cython is available."""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # the pure-Python kernel is used instead
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("qtetra._kernels", ["src/qtetra/_kernels.pyx"], optional=True)],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )

setup(ext_modules=ext_modules)
