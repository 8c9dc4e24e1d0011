"""Kernel selection.

The compiled kernel is used when it imported and the system has at most 64
points; set ``PSEUDOTRAP_PURE_PYTHON=1`` to force the pure-Python kernels.
"""

from __future__ import annotations

import os

from . import _pykernel

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

OK, LASSO, CAP = _pykernel.OK, _pykernel.LASSO, _pykernel.CAP
PASS, FAIL = _pykernel.PASS, _pykernel.FAIL

COMPILED_AVAILABLE = _ckernel is not None
DEFAULT_BACKEND = (
    "cython" if COMPILED_AVAILABLE and not os.environ.get("PSEUDOTRAP_PURE_PYTHON") else "python"
)
MAX_COMPILED_POINTS = 64


def _pick(num_points: int, backend: str | None):
    backend = backend or DEFAULT_BACKEND
    if backend == "cython":
        if _ckernel is None:
            raise RuntimeError("compiled kernel requested but not built")
        if num_points <= MAX_COMPILED_POINTS:
            return _ckernel
        return _pykernel
    if backend == "python":
        return _pykernel
    raise ValueError(f"unknown backend {backend!r}")


def _graph_arg(mod, g):
    # the compiled kernel reads successor bitmasks, the Python one sorted lists
    return g.adjacency if mod is _ckernel else g.succ


def lasso_search(g, cover, targets, cap, backend=None):
    """Run the lasso search on a :class:`~pseudotrap.pseudo_orbit.PseudoOrbitGraph`."""
    mod = _pick(g.num_points, backend)
    return mod.lasso_search(_graph_arg(mod, g), cover, targets, cap)


def layered_search(g, cover, targets, n, cap, backend=None):
    mod = _pick(g.num_points, backend)
    return mod.layered_search(_graph_arg(mod, g), cover, targets, n, cap)
