"""Build script: compiles the optional _kernels extension.

The package works without the extension (binowords.kernels falls back to
the pure-Python implementation), so any failure here downgrades to a
pure-Python install instead of aborting.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            print(f"warning: building _kernels failed ({exc}); "
                  "installing pure-Python fallback only")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "installing pure-Python fallback only")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available; installing pure-Python fallback only")
        return []
    ext = Extension("binowords._kernels", ["src/binowords/_kernels.pyx"])
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
