"""Kernel selection: compiled extension when importable, pure fallback.

``POLYCERT_PURE=1`` in the environment forces the pure-Python kernels (and
pure-Python rationals); this is how the benchmark and the equivalence tests
exercise both stacks.
"""

import os

if os.environ.get("POLYCERT_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION

sign_variations = _impl.sign_variations
taylor_shift1 = _impl.taylor_shift1
scale_pow2 = _impl.scale_pow2
half_scale = _impl.half_scale
descartes_bound_01 = _impl.descartes_bound_01
eval_rat_scaled = _impl.eval_rat_scaled
eval_int = _impl.eval_int
