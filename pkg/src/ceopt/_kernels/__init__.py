"""Numerical kernel backend selection.

The compiled extension (`_native`, built from _native.pyx) is preferred; the
pure-Python module (`_pyfallback`) is the drop-in fallback. Both implement the
same functions with bitwise-identical arithmetic. Set CEOPT_BACKEND=python (or
native) to force one.
"""

import os

from ceopt._kernels import _pyfallback

_FORCED = os.environ.get("CEOPT_BACKEND")

if _FORCED == "python":
    _impl = _pyfallback
else:
    try:
        from ceopt._kernels import _native as _impl
    except ImportError:
        if _FORCED == "native":
            raise ImportError(
                "CEOPT_BACKEND=native but the compiled kernel is not built"
            ) from None
        _impl = _pyfallback

BACKEND = _impl.NAME

sq_dists = _impl.sq_dists
affine_project = _impl.affine_project
drift_step = _impl.drift_step
filter_order = _impl.filter_order
round_step = _impl.round_step
sum_sq_error = _impl.sum_sq_error


def available_backends():
    """Importable backend modules keyed by name (for tests and benchmarks)."""
    backends = {_pyfallback.NAME: _pyfallback}
    try:
        from ceopt._kernels import _native
        backends[_native.NAME] = _native
    except ImportError:
        pass
    return backends
