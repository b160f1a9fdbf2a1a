"""Backend selection for the hot finite-difference kernels.

Two implementations of the stencil kernels exist: numba ``@njit`` loops and a
pure-numpy fallback.  The environment variable ``KE_LAB_BACKEND`` picks one:

* ``auto`` (default): numba when importable, numpy otherwise
* ``numba``: require numba, raise if it cannot be imported
* ``numpy``: force the fallback even when numba is installed

``KE_LAB_THREADS`` caps internal parallelism (0 or unset means automatic).
The shipped kernels run serially for deterministic reductions, so the cap is
applied to numba's thread pool as an upper bound only.
"""

import os

_VALID = ("auto", "numba", "numpy")


def _requested() -> str:
    value = os.environ.get("KE_LAB_BACKEND", "auto").strip().lower()
    if value not in _VALID:
        raise ValueError(
            f"KE_LAB_BACKEND must be one of {_VALID}, got {value!r}"
        )
    return value


def _thread_cap() -> int:
    raw = os.environ.get("KE_LAB_THREADS", "0").strip()
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"KE_LAB_THREADS must be an integer, got {raw!r}") from exc
    if cap < 0:
        raise ValueError(f"KE_LAB_THREADS must be >= 0, got {cap}")
    return cap


def _select() -> str:
    requested = _requested()
    if requested == "numpy":
        return "numpy"
    try:
        import numba
    except ImportError:
        if requested == "numba":
            raise
        return "numpy"
    cap = _thread_cap()
    if cap > 0:
        numba.set_num_threads(min(cap, numba.config.NUMBA_DEFAULT_NUM_THREADS))
    return "numba"


#: Name of the backend active for this process, decided once at import.
ACTIVE: str = _select()


def using_numba() -> bool:
    return ACTIVE == "numba"
