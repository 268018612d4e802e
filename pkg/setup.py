import os

from setuptools import Extension, setup

# the compiled kernel is optional; the package falls back to pure Python
ext_modules = []
if os.environ.get("PETERSON_SCHUBERT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("peterson_schubert._dp", ["src/peterson_schubert/_dp.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
