"""Pick the compiled kernel if it was built, else the numpy fallback.

Set ``STEENHIT_PURE=1`` to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("STEENHIT_PURE", "") not in ("", "0"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

if _compiled is not None:
    rref_inplace = _compiled.rref_inplace
    BACKEND = "cython"
else:
    rref_inplace = _kernels_py.rref_inplace
    BACKEND = "python"

IMPLEMENTATIONS = {"python": _kernels_py.rref_inplace}
if _compiled is not None:
    IMPLEMENTATIONS["cython"] = _compiled.rref_inplace
