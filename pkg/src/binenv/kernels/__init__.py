"""Kernel backend selection.

Hot grids (bound sweeps, bent-function enumeration, batched transforms) run
through one of two interchangeable backends:

* ``numba`` -- JIT-compiled kernels (default when numba imports cleanly);
* ``numpy`` -- pure vectorized twins with identical contracts.

The environment variable ``BINENV_KERNELS`` forces a backend (``numba`` or
``numpy``).  Both backends produce rigorous float64 enclosures; verdicts never
depend on the choice because undecided cells are escalated to MPFR either way.
``benchmarks/bench_kernels.py`` compares the two.
"""

from __future__ import annotations

import os
import warnings
from types import ModuleType

BACKEND_ENV = "BINENV_KERNELS"
BACKENDS = ("numba", "numpy")

# Float64 integer arithmetic inside the kernels is exact only while every
# intermediate stays below 2^53; the tightest constraint is 2m(2m-1) in the
# t-grid.  Sweeps beyond this must take the MPFR path.
EXACT_GRID_LIMIT = 30_000_000

_loaded: dict[str, ModuleType] = {}


def backend_name(override: str | None = None) -> str:
    name = override or os.environ.get(BACKEND_ENV, "").strip().lower() or "numba"
    if name not in BACKENDS:
        raise ValueError(f"unknown kernel backend {name!r}; expected one of {BACKENDS}")
    return name


def get_backend(override: str | None = None) -> ModuleType:
    """Return the kernel module, falling back to numpy if numba cannot load."""
    name = backend_name(override)
    mod = _loaded.get(name)
    if mod is not None:
        return mod
    if name == "numba":
        try:
            from . import numba_backend as mod
        except ImportError as exc:  # pragma: no cover - depends on environment
            warnings.warn(f"numba backend unavailable ({exc}); using numpy kernels")
            from . import numpy_backend as mod
            name = "numpy"
    else:
        from . import numpy_backend as mod
    _loaded[name] = mod
    return mod
