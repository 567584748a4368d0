"""Backend switch: numba-compiled kernels or the pure-numpy fallbacks.

The backend is read once from ``KLEINZETA_BACKEND`` (``numba`` or ``numpy``)
and can be flipped at runtime with :func:`set_backend`.  Without numba
installed the numpy path is the only one available.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None

if HAVE_NUMBA and "NUMBA_THREADING_LAYER" not in os.environ:
    # skip the TBB probe, which warns on version mismatches
    numba.config.THREADING_LAYER = "omp"


def _initial_backend():
    requested = os.environ.get("KLEINZETA_BACKEND", "numba").strip().lower()
    if requested not in ("numba", "numpy"):
        raise ValueError(f"KLEINZETA_BACKEND must be 'numba' or 'numpy', not {requested!r}")
    if requested == "numba" and not HAVE_NUMBA:
        return "numpy"
    return requested


_backend = _initial_backend()


def backend():
    return _backend


def set_backend(name):
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    _backend = name


def set_threads(n):
    """Cap the numba worker pool; ``None`` leaves the default."""
    if n is None or not HAVE_NUMBA:
        return
    n = max(1, min(int(n), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(n)


if HAVE_NUMBA:
    def njit(*args, **kwargs):
        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)

    prange = numba.prange
else:  # pragma: no cover
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

    prange = range
