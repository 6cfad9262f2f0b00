"""Kernel dispatch: compiled extension when built, numpy fallback otherwise.

Set ``MCLOSURE_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("MCLOSURE_PURE_PYTHON"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py

tuple_orbit_labels = _impl.tuple_orbit_labels
signature_counts = _impl.signature_counts
preserving_rows = _impl.preserving_rows
