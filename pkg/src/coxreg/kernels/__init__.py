"""Kernel selection: compiled extension when built, numpy fallback otherwise.

Set ``COXREG_PURE_PYTHON=1`` to force the fallback (used by the benchmark).
"""

import os

if os.environ.get("COXREG_PURE_PYTHON"):
    from . import _pykernel as _impl
else:
    try:
        from . import _ckernel as _impl
    except ImportError:
        from . import _pykernel as _impl

gfp_rref = _impl.gfp_rref
BACKEND = _impl.BACKEND
