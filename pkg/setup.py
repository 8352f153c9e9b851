import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the Cython kernels if possible; the package falls back to the
    numpy implementation in ajsf._kernels_np when the extension is missing."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"warning: building the compiled kernels failed ({exc}); "
                  "installing with the pure-python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: {ext.name} failed to compile ({exc}); "
                  "installing with the pure-python fallback")


extensions = []
if os.environ.get("AJSF_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        extensions = cythonize(
            [Extension("ajsf._weight_kernels", ["src/ajsf/_weight_kernels.pyx"])],
            compiler_directives={"language_level": "3", "boundscheck": False,
                                 "wraparound": False, "cdivision": True},
        )
    except ImportError:
        print("warning: Cython not available, installing with the pure-python fallback")

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
