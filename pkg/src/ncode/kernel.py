"""Kernel selection: compiled extension when available, pure Python otherwise.

Set NCODE_PURE=1 to force the pure-Python kernels (used by the benchmark
and the parity tests).
"""

from __future__ import annotations

import os

if os.environ.get("NCODE_PURE") == "1":
    from ncode import _pykernel as _impl
else:
    try:
        from ncode import _ckernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        from ncode import _pykernel as _impl

IMPL: str = _impl.IMPL
census_block = _impl.census_block
search_block = _impl.search_block

MODE_OPEN = 0
MODE_CLOSED = 1
MODE_CONVEX = 2
