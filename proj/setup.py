"""Build the pybind11 extension through the project's CMake tree."""

import os
import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name, sourcedir=""):
        super().__init__(name, sources=[])
        self.sourcedir = os.fspath(Path(sourcedir).resolve())


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        out_path = Path.cwd() / self.get_ext_fullpath(ext.name)
        out_path.parent.mkdir(parents=True, exist_ok=True)

        build_dir = Path(self.build_temp) / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        cmake_args = [
            "-DCMAKE_BUILD_TYPE=Release",
            "-DNEURONCODE_BUILD_PYTHON=ON",
            "-DNEURONCODE_BUILD_CLI=OFF",
            "-DNEURONCODE_BUILD_TESTS=OFF",
            f"-DPython3_EXECUTABLE={sys.executable}",
        ]
        subprocess.run(
            ["cmake", "-S", ext.sourcedir, "-B", str(build_dir), *cmake_args],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target",
             "neuroncode_python", "-j"],
            check=True,
        )

        produced = list((build_dir / "python" / "neuroncode").glob("_core*"))
        if not produced:
            raise RuntimeError("cmake did not produce the extension module")
        shutil.copy2(produced[0], out_path)


setup(
    packages=["neuroncode"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("neuroncode._core")],
    cmdclass={"build_ext": CMakeBuild},
    zip_safe=False,
)
