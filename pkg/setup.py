from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("epw._kernels.speedups", ["src/epw/_kernels/speedups.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # pure-Python fallback kernels are selected at import time
    extensions = []

setup(ext_modules=extensions)
