"""Backend selection for the integer kernels.

The compiled module is used when it was built; otherwise, or when the
environment variable ``PREGROUPS_PURE_PYTHON`` is set to a non-empty value,
the pure-Python twin is used. Both expose the same functions.
"""
import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

if _ckernels is not None and not os.environ.get("PREGROUPS_PURE_PYTHON"):
    backend = _ckernels
else:
    backend = _pykernels

BACKEND = backend.NAME


def available_backends():
    return [m for m in (_ckernels, _pykernels) if m is not None]


make_tables = backend.make_tables
reduce_left = backend.reduce_left
reduce_right = backend.reduce_right
is_reduced = backend.is_reduced
interleave = backend.interleave
equivalent_reduced = backend.equivalent_reduced
lexmin_interleaving = backend.lexmin_interleaving
all_interleavings = backend.all_interleavings
axiom_witnesses = backend.axiom_witnesses
