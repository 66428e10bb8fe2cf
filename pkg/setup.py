from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "gorbit._ops_c",
                ["src/gorbit/_ops_c.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython: install pure-Python only; gorbit._kernel falls back at import.
    ext_modules = []

setup(ext_modules=ext_modules)
