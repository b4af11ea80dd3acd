"""Kernel backend selection.

The heavy per-source BFS routines (shortest-path counting for betweenness,
distance tallies) exist twice: a compiled extension and a pure-Python
fallback with operation-for-operation identical arithmetic.  The compiled
module is preferred when importable; set ``ASTOPO_PURE_PYTHON=1`` to force
the fallback.
"""

from __future__ import annotations

import os

from . import _pure

if os.environ.get("ASTOPO_PURE_PYTHON"):
    _active = _pure
    BACKEND = "python"
else:
    try:
        from . import _speed as _active  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _active = _pure
        BACKEND = "python"

brandes_block = _active.brandes_block
distance_block = _active.distance_block


def backends() -> dict[str, object]:
    """All importable backends by name (for benchmarks and parity tests)."""
    found: dict[str, object] = {"python": _pure}
    try:
        from . import _speed

        found["compiled"] = _speed
    except ImportError:
        pass
    return found
