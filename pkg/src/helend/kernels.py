"""Backend selection for the hot kernels.

The compiled extension is preferred when built; the numpy fallback is
selected otherwise.  Set ``HELEND_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("HELEND_PURE_PYTHON"):
    from . import _kernels_py as _impl
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl
        BACKEND = "python"

eval_exponent = _impl.eval_exponent
log_derivative = _impl.log_derivative
polyline_intersections = _impl.polyline_intersections

__all__ = ["BACKEND", "eval_exponent", "log_derivative", "polyline_intersections"]
