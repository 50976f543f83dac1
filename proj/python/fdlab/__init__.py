"""Bubble-ansatz construction and fast-diffusion extinction laboratory.

Thin package wrapper re-exporting the compiled extension. Built either via
scikit-build-core (`pip install .`, extension inside the package) or
directly by the CMake tree (extension on PYTHONPATH from the build dir).
"""

try:
    from ._fdlab import *   # noqa: F401,F403
    from . import _fdlab as _ext
except ImportError:         # in-tree build: extension is top-level
    from _fdlab import *    # noqa: F401,F403
    import _fdlab as _ext

oracles = _ext.oracles
