"""Build script: compiles the optional field-arithmetic extension.

The package is fully functional without the extension (pure-Python limb
kernels take over), so any compiler failure downgrades to a warning
instead of aborting the install.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # toolchain missing: fall back to pure python
            sys.stderr.write(f"warning: extension build skipped: {exc}\n")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            sys.stderr.write(f"warning: building {ext.name} failed: {exc}\n")


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    return cythonize(
        [Extension("ctecc._fpcore", ["src/ctecc/_fpcore.pyx"])],
        language_level=3,
    )


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
