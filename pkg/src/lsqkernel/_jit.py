"""Optional numba acceleration.

Every hot loop in this package is written as plain scalar Python that numba
can compile.  When numba is missing the same code still runs (slowly), so the
library stays importable and the test suite stays meaningful without it.
"""

try:  # pragma: no cover - exercised implicitly by every jitted call
    from numba import njit

    HAVE_NUMBA = True
except Exception:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(fn):
            return fn

        return wrap
