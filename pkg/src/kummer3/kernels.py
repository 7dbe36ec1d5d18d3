"""Kernel dispatch: the compiled module when built, the Python twin otherwise.

Set KUMMER3_PURE_PYTHON=1 to force the Python versions.
"""

import os

if os.environ.get("KUMMER3_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = "cython" if _impl.__name__.endswith("._kernels") else "python"

imag_reduced_forms = _impl.imag_reduced_forms
imag_class_number = _impl.imag_class_number
real_reduced_ideals = _impl.real_reduced_ideals
real_rho = _impl.real_rho
real_cycles = _impl.real_cycles
real_class_number = _impl.real_class_number
cubic_has_root = _impl.cubic_has_root
minus_log_mod = _impl.minus_log_mod
