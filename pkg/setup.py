from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("orthofix._speedups", ["src/orthofix/_speedups.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # Compiled kernel is optional: the package falls back to pure Python.
    ext_modules = []

setup(ext_modules=ext_modules)
