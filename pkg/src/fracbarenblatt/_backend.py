"""Select the compiled core when importable, else the numpy fallback.

Setting ``FRACBARENBLATT_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _fallback

BACKENDS = {"python": _fallback}
try:
    from . import _kernels
    BACKENDS["cython"] = _kernels
except ImportError:  # extension not built
    pass

if os.environ.get("FRACBARENBLATT_PURE_PYTHON", "") not in ("", "0") or "cython" not in BACKENDS:
    BACKEND = "python"
else:
    BACKEND = "cython"
_impl = BACKENDS[BACKEND]


def get(name=None):
    """Return the backend module ``name`` (default: the active one)."""
    if name is None:
        return _impl
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {sorted(BACKENDS)}") from None


antiderivative_row = _impl.antiderivative_row
march = _impl.march
