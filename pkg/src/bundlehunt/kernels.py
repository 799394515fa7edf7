"""Backend selection for the elimination kernels.

The compiled extension is preferred when importable; set BUNDLEHUNT_PURE=1 in
the environment to force the pure Python fallback.  Both backends implement
the same algorithm and produce identical echelon output.
"""

import os

if os.environ.get("BUNDLEHUNT_PURE"):
    from . import _elim_py as _impl
else:
    try:
        from . import _elim_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _elim_py as _impl

BACKEND = _impl.BACKEND
echelon = _impl.echelon
rank_rows = _impl.rank_rows
det_int = _impl.det_int
