from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install, kernels fall back to numpy
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("parryindex._ckernels", ["src/parryindex/_ckernels.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
