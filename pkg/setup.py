import os

from setuptools import Extension, setup

extensions = []
if not os.environ.get("BUNDLEHUNT_NO_EXT"):
    try:
        from Cython.Build import cythonize

        extensions = cythonize(
            [Extension("bundlehunt._elim_c", ["src/bundlehunt/_elim_c.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:  # missing Cython or C compiler: fall back to pure python
        print(f"bundlehunt: skipping compiled kernels ({exc})")
        extensions = []

setup(ext_modules=extensions)
