"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``SURFGRAPH_PURE=1`` in the environment to force the pure-Python
kernels (used by the benchmark and to test both paths).
"""

from __future__ import annotations

import os

if os.environ.get("SURFGRAPH_PURE") == "1":
    from surfgraph import _purecore as _impl
else:
    try:
        from surfgraph import _fastcore as _impl  # type: ignore[attr-defined]
    except ImportError:
        from surfgraph import _purecore as _impl

IMPLEMENTATION: str = _impl.IMPLEMENTATION
face_count = _impl.face_count
min_genus = _impl.min_genus
noose_sweep = _impl.noose_sweep
