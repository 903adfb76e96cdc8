"""Optional compiled kernels.

``_lexer_c`` is a hand-written Cython tokenizer. ``_parse_c`` is the plain
Python parser core (``_parse_py.py``) compiled unchanged. Both are optional:
without Cython or a C compiler, or with ``STATE_HARVEST_PURE=1``, the package
installs pure Python and uses the fallbacks.
"""

import os
import shutil
from pathlib import Path

from setuptools import setup

HERE = Path(__file__).parent


def _extensions():
    if os.environ.get("STATE_HARVEST_PURE"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    # the twin needs its own file name so both modules can coexist
    twin_dir = HERE / "build" / "cython_src"
    twin_dir.mkdir(parents=True, exist_ok=True)
    twin = twin_dir / "_parse_c.py"
    shutil.copyfile(HERE / "src" / "state_harvest" / "_parse_py.py", twin)

    return cythonize(
        [
            Extension("state_harvest._lexer_c", ["src/state_harvest/_lexer_c.pyx"]),
            Extension("state_harvest._parse_c", [str(twin.relative_to(HERE))]),
        ],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )


setup(ext_modules=_extensions())
