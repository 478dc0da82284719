"""Build script: compiles the optional Cython coefficient kernel.

The package works without the extension (a pure-Python twin is selected at
import time), so any build failure here is non-fatal.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/qsl2r/_cyclocore.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-host dependent
    print(f"qsl2r: skipping Cython kernel build ({exc}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)
