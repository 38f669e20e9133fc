"""Backend selection for the small-graph kernels.

Set ``COGRAPHEDIT_BACKEND=numpy`` to force the pure-numpy path; the default is
numba when it can be imported.
"""

import os

ENV_VAR = "COGRAPHEDIT_BACKEND"


def _numba_available():
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def selected_backend():
    requested = os.environ.get(ENV_VAR, "").strip().lower()
    if requested == "numpy":
        return "numpy"
    if requested not in ("", "numba"):
        raise ValueError(f"{ENV_VAR} must be 'numba' or 'numpy', got {requested!r}")
    if _numba_available():
        return "numba"
    if requested == "numba":
        raise ImportError(f"{ENV_VAR}=numba but numba is not installed")
    return "numpy"
