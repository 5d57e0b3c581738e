import os
from glob import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

eigen_include = os.environ.get("EIGEN3_INCLUDE_DIR", "/usr/include/eigen3")

ext_modules = [
    Pybind11Extension(
        "aggspec._core",
        sorted(glob("src/*.cpp")) + ["bindings/module.cpp"],
        include_dirs=["include", eigen_include],
        cxx_std=20,
    )
]

setup(
    package_dir={"": "python"},
    ext_modules=ext_modules,
    cmdclass={"build_ext": build_ext},
)
