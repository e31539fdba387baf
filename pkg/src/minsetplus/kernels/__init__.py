"""Hot kernels with a compiled backend and a pure-Python fallback.

The compiled extension (``_ckernels``) is used when it was built; otherwise,
or when the environment variable ``MINSETPLUS_PURE`` is set to a non-empty
value other than ``0``, the numpy implementation in ``_pure`` is used.
Callers go through this module's attributes (``kernels.interval_overlap``)
so that :func:`set_backend` takes effect everywhere.
"""
import os

from . import _pure

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_EXPORTS = ("interval_overlap", "odp_scores", "leave_one_out")

BACKENDS = {"pure": _pure}
if _ckernels is not None:
    BACKENDS["compiled"] = _ckernels

backend = None


def available_backends():
    return sorted(BACKENDS)


def set_backend(name):
    """Rebind the kernel functions to backend ``name`` ("compiled" or "pure")."""
    global backend
    try:
        impl = BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"kernel backend {name!r} unavailable; have {available_backends()}"
        ) from None
    for fn in _EXPORTS:
        globals()[fn] = getattr(impl, fn)
    backend = name


def _default_backend():
    if os.environ.get("MINSETPLUS_PURE", "") not in ("", "0"):
        return "pure"
    return "compiled" if _ckernels is not None else "pure"


set_backend(_default_backend())
