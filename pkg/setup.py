"""Build the optional compiled elimination kernel.

If Cython or a C compiler is unavailable the package still installs and
falls back to ``superdecomp._elim_py`` at import time.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("superdecomp._elim", ["src/superdecomp/_elim.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except Exception:  # noqa: BLE001 - any build-tool failure means pure Python
    ext_modules = []

setup(ext_modules=ext_modules)
