"""Kernel backend selection.

The compiled core (`hhone._modp_c`) replaces the elimination kernel when it
is built; matrix products always go through the numpy implementation because
its BLAS float64 path is both exact (bounded integers) and the fastest route.
Set HHONE_KERNELS=py to force the fallback, HHONE_KERNELS=c to require the
compiled core.
"""

import os

from . import _modp_py

_choice = os.environ.get("HHONE_KERNELS", "auto").lower()
_compiled = None
if _choice not in ("py", "python", "numpy"):
    try:
        from . import _modp_c as _compiled
    except ImportError:
        if _choice in ("c", "cython"):
            raise ImportError(
                "HHONE_KERNELS=c requested but the compiled kernels are not built"
            ) from None

BACKEND = _compiled.NAME if _compiled is not None else _modp_py.NAME

rref_modp = (_compiled or _modp_py).rref
matmul_modp = _modp_py.matmul
reduce_rows_modp = _modp_py.reduce_rows

# both implementations, for cross-checking tests and the benchmark
IMPLEMENTATIONS = {"numpy": _modp_py}
if _compiled is not None:
    IMPLEMENTATIONS["cython"] = _compiled
