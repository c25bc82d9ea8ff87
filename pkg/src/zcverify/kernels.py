"""Kernel dispatcher: compiled extension when available, pure Python otherwise.

Set ZCVERIFY_PURE=1 to force the pure-Python kernels (used by the parity
tests and the benchmark).  `BACKEND` records which implementation is live.
"""

from __future__ import annotations

import os

if os.environ.get("ZCVERIFY_PURE"):
    from . import _kernels_py as _impl

    BACKEND = "pure"
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "pure"

BIG = _impl.BIG
subgroup_closure = _impl.subgroup_closure
class_ids = _impl.class_ids
associativity_violations = _impl.associativity_violations
coset_ids = _impl.coset_ids
xset_size = _impl.xset_size
yset = _impl.yset
transporter_violations = _impl.transporter_violations
pa_enumerate = _impl.pa_enumerate
