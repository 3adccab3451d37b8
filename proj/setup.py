# Copyright (c) 2026 the qpgsim authors.
# SPDX-License-Identifier: MIT
"""CMake-driven build of the _qpgsim extension for pip installs.

The CMake project remains the source of truth for compilation flags; this
shim only points its library output at the location setuptools expects.
"""

import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        extdir = Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        build_temp = Path(self.build_temp).resolve()
        build_temp.mkdir(parents=True, exist_ok=True)
        source_dir = Path(__file__).parent.resolve()
        configure = [
            "cmake",
            str(source_dir),
            "-DCMAKE_BUILD_TYPE=Release",
            "-DQPG_BUILD_TESTS=OFF",
            f"-DQPG_PYTHON_OUTPUT_DIR={extdir}",
            f"-DPython3_EXECUTABLE={sys.executable}",
        ]
        subprocess.run(configure, cwd=build_temp, check=True)
        subprocess.run(
            ["cmake", "--build", ".", "--target", "_qpgsim"],
            cwd=build_temp,
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("qpgsim._qpgsim")],
    cmdclass={"build_ext": CMakeBuild},
)
