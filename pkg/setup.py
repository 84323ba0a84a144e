from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # the pure-Python kernels take over
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "bruhatcup._ckernels",
                ["src/bruhatcup/_ckernels.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
