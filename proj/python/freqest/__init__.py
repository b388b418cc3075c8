"""Bayesian schedule design for single-qubit frequency estimation.

The compiled extension carries the implementation; this package re-exports
its public surface.
"""

import os
import sys

try:
    from freqest._core import *  # noqa: F401,F403
    from freqest import _core as core  # noqa: F401
except ImportError:  # pragma: no cover - dev-tree fallback
    _dir = os.environ.get("FREQEST_CORE_DIR")
    if not _dir:
        raise
    sys.path.insert(0, _dir)
    from _core import *  # noqa: F401,F403
    import _core as core  # noqa: F401
