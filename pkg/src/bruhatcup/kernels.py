"""Backend selection for the hot loops.

The compiled extension ``_ckernels`` is used when it imports; otherwise the
pure-Python ``_pykernels`` is used.  Setting ``BRUHATCUP_PURE_PYTHON=1``
forces the fallback.
"""

import os

from . import _pykernels

if os.environ.get("BRUHATCUP_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND

popcount = _impl.popcount
submasks_of_size = _impl.submasks_of_size
epsilon = _impl.epsilon
initial_vertex = _impl.initial_vertex
delta_terms = _impl.delta_terms
steenrod_terms = _impl.steenrod_terms
add_into = _impl.add_into
tensor_boundary = _impl.tensor_boundary
transpose = _impl.transpose
homotopy_defect = _impl.homotopy_defect
complement_defect = _impl.complement_defect
packet_consistent = _impl.packet_consistent
appendix_sweep = _impl.appendix_sweep
enumerate_segments = _impl.enumerate_segments


def backends():
    """Available kernel modules, pure Python first."""
    out = [_pykernels]
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out.append(_ckernels)
    return out
