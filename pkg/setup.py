from Cython.Build import cythonize
from setuptools import Extension, setup

ext = Extension("torus_split._kernels", ["src/torus_split/_kernels.pyx"])

setup(ext_modules=cythonize([ext], language_level=3))
