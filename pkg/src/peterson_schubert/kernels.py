"""Selects the compiled DP kernel when available, else the pure-Python one.

Set ``PETERSON_SCHUBERT_PURE=1`` to force the fallback.
"""

import os
from array import array

from . import _dp_py

BACKEND = "python"
_compiled = None
if os.environ.get("PETERSON_SCHUBERT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _dp as _compiled

        BACKEND = "cython"
    except ImportError:
        _compiled = None


def _as_array(code, seq):
    if isinstance(seq, array) and seq.typecode == code:
        return seq
    return array(code, seq)


def billey_dp_python(trans, rank, word, heights, nstates, target):
    return _dp_py.billey_dp(trans, rank, word, heights, nstates, target)


def billey_dp(trans, rank, word, heights, nstates, target):
    if _compiled is not None and nstates > 0:
        try:
            return _compiled.billey_dp(
                _as_array("i", trans), rank, _as_array("i", word), _as_array("q", heights),
                nstates, target,
            )
        except OverflowError:
            pass
    return _dp_py.billey_dp(trans, rank, word, heights, nstates, target)
