"""Build script: compiles the optional Cython term-merge kernel.

The package is fully functional without the extension; jsbo._accel falls
back to the pure-Python kernel when the compiled module is absent.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/jsbo/_kernels.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print("jsbo: skipping Cython kernel build (%s); pure-Python fallback will be used" % exc)

setup(ext_modules=ext_modules)
