"""Select the CNF kernel backend at import.

Set ``ORDGRAPH_PURE_PYTHON=1`` to force the pure-Python kernel even when the
compiled extension is available.
"""
import os

BACKEND = "python"

if not os.environ.get("ORDGRAPH_PURE_PYTHON"):
    try:
        from ._kernel_c import add, finite, from_levels, left_sub, mul  # noqa: F401
        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._kernel_py import add, finite, from_levels, left_sub, mul  # noqa: F401

__all__ = ["BACKEND", "add", "finite", "from_levels", "left_sub", "mul"]
