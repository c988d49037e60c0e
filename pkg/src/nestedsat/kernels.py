"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module stands in.  Setting ``NESTEDSAT_BACKEND``
to ``python`` or ``cython`` overrides the choice at import.  Both expose ``solve_flat``,
``order_violation`` and ``generate_sweep`` with identical results.
"""

from __future__ import annotations

import logging
import os
from types import ModuleType

from . import _pykernels

log = logging.getLogger(__name__)

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None
    log.debug("compiled kernels unavailable; using pure-Python fallback")

_BACKENDS: dict[str, ModuleType | None] = {"python": _pykernels, "cython": _ckernels}

active: ModuleType = _ckernels if _ckernels is not None else _pykernels


def available() -> list[str]:
    return [name for name, mod in _BACKENDS.items() if mod is not None]


def get(name: str | None = None) -> ModuleType:
    """The kernel module called ``name``, or the active one."""
    if name is None:
        return active
    mod = _BACKENDS.get(name)
    if mod is None:
        raise ValueError(f"kernel backend {name!r} is not available (have {available()})")
    return mod


def use(name: str) -> ModuleType:
    """Switch the process-wide default backend."""
    global active
    active = get(name)
    return active


if os.environ.get("NESTEDSAT_BACKEND"):
    use(os.environ["NESTEDSAT_BACKEND"])
