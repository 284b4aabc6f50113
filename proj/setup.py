"""Build shim: compiles the CMake project and drops the _core extension into
the unistoch package. Metadata lives in pyproject.toml."""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        source_dir = Path(__file__).parent.resolve()
        # The extension lands next to the pure-python package sources.
        out_dir = Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        cfg = "Debug" if self.debug else "Release"
        cmake_args = [
            f"-DCMAKE_BUILD_TYPE={cfg}",
            f"-DPython3_EXECUTABLE={sys.executable}",
            "-DUNISTOCH_BUILD_TESTS=OFF",
            "-DUNISTOCH_BUILD_CLI=OFF",
            "-DUNISTOCH_BUILD_PYTHON=ON",
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={out_dir}",
        ]
        try:
            import pybind11

            cmake_args.append(f"-Dpybind11_DIR={pybind11.get_cmake_dir()}")
        except ImportError:
            pass

        env = dict(os.environ, UNISTOCH_WHEEL_BUILD="1")
        subprocess.run(["cmake", "-S", str(source_dir), "-B", str(build_dir)] + cmake_args,
                       check=True, env=env)
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core", "-j", str(os.cpu_count() or 2)],
            check=True, env=env)


setup(
    package_dir={"": "python"},
    packages=["unistoch"],
    ext_modules=[CMakeExtension("unistoch._core")],
    cmdclass={"build_ext": CMakeBuild},
)
