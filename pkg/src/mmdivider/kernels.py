"""Backend selection for the sweep kernel.

The compiled extension is used when it imports; otherwise the NumPy
implementation. Set ``MMDIVIDER_BACKEND=python`` to force the fallback.
"""

import os

from . import _kernel_py
from .errors import ValidationError

BACKENDS = {"python": _kernel_py.divider_s}

try:
    from . import _kernel as _compiled
except ImportError:  # extension not built
    _compiled = None
else:
    BACKENDS["compiled"] = _compiled.divider_s

if os.environ.get("MMDIVIDER_BACKEND", "").lower() == "python" or _compiled is None:
    BACKEND = "python"
else:
    BACKEND = "compiled"


def get_kernel(name=None):
    name = name or BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValidationError(f"backend {name!r} not available (have {sorted(BACKENDS)})") from None
