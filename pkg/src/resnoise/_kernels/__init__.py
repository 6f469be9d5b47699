"""Hot-kernel backend selection.

The compiled extension is preferred when it imported cleanly; otherwise the
NumPy reference implementation takes over. Set RESNOISE_BACKEND=python to
force the fallback (used by the benchmark and the backend-equivalence tests).
"""

import os

from . import _pyref

if os.environ.get("RESNOISE_BACKEND", "").lower() == "python":
    _impl = _pyref
else:
    try:
        from . import _native as _impl
    except ImportError:
        _impl = _pyref

BACKEND = _impl.BACKEND
ACT_TANH = _pyref.ACT_TANH
ACT_SIGMOID = _pyref.ACT_SIGMOID
ACT_LINEAR = _pyref.ACT_LINEAR

mg_euler = _impl.mg_euler
collect_states = _impl.collect_states
open_loop_clean = _impl.open_loop_clean
closed_loop_clean = _impl.closed_loop_clean
