"""Build script: compiles the optional short-vector kernel when Cython is
available.  A failed or skipped build leaves the pure-Python kernel in charge;
everything still works, just slower on large enumerations."""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/flatgenus/_enum_fast.pyx"], language_level=3
    )
    for ext in ext_modules:
        ext.optional = True
except ImportError:
    pass

setup(ext_modules=ext_modules)
