"""Kernel backend selection.

The compiled Cython extension is preferred when built; otherwise the numpy
fallback in ``_core_py`` is used. Set ``GAMMA_FTS_PURE_PYTHON=1`` to force
the fallback (the benchmark suite uses this to compare backends).
"""

from __future__ import annotations

import os

from . import _core_py

if os.environ.get("GAMMA_FTS_PURE_PYTHON", "") not in ("", "0"):
    _impl = _core_py
else:
    try:
        from . import _core_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _core_py

BACKEND: str = _impl.BACKEND
max_membership_column = _impl.max_membership_column
som_bmu_batch = _impl.som_bmu_batch
som_train = _impl.som_train
