import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SURFGRAPH_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("surfgraph._fastcore", ["src/surfgraph/_fastcore.pyx"])],
            language_level=3,
        )
    except ImportError:
        # Pure-Python fallback is selected at import time; the package
        # works without the compiled kernel, only slower.
        ext_modules = []

setup(ext_modules=ext_modules)
