"""Dispatch between the compiled hot loops and their pure-Python fallback.

The compiled module is used when it imported and the box is small enough
for int64 arithmetic; set ``TWOSELMER_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

try:  # pragma: no cover - depends on the build
    from . import _kernels as _ext
except ImportError:  # pragma: no cover
    _ext = None

__all__ = ["BACKEND", "sieve_primes", "count_minimal_box", "quartic_box_search", "compiled_available"]

_LIMIT = 2**62


def compiled_available() -> bool:
    return _ext is not None


def _use_ext() -> bool:
    return _ext is not None and os.environ.get("TWOSELMER_PURE_PYTHON", "") not in ("1", "true", "yes")


BACKEND = "compiled" if _use_ext() else "python"


def sieve_primes(amax: int, bmax: int) -> list[int]:
    """Primes p that can satisfy p^4 | A and p^6 | B with A or B nonzero in the box."""
    out = []
    p = 2
    while p**4 <= amax or p**6 <= bmax:
        if all(p % q for q in out):
            out.append(p)
        p += 1
    return out


def count_minimal_box(amax: int, bmax: int, *, backend: str = None):
    primes = sieve_primes(amax, bmax)
    if backend is None:
        backend = "compiled" if _use_ext() else "python"
    if backend == "compiled" and _ext is not None and 27 * bmax * bmax + 4 * amax**3 < _LIMIT and len(primes) <= 16:
        return _ext.count_minimal_box(amax, bmax, primes)
    return _pykernels.count_minimal_box(amax, bmax, primes)


def _fits_int64(I: int, J: int, amax: int, hmax: int, bmax0: int) -> bool:
    P = (hmax + 12 * amax * amax) // 8 + 1  # bound on |a c| and |c|
    beta = 648 * amax * P + 648 * amax**3
    kk = 72 * P + 108 * amax**2
    gamma_a2 = kk * (amax * amax * abs(I) + P * P) + 24 * P**3 + 12 * amax**3 * abs(J)
    gamma = kk * (abs(I) + P * P) + 24 * P**3 + 12 * amax * abs(J)
    disc = beta * beta + 1296 * gamma_a2
    c0 = 3 * bmax0
    zero_branch = 9 * bmax0 * c0 * (c0 * c0 + abs(I)) + 2 * c0**3 + abs(J)
    return max(disc, gamma, zero_branch, 27 * bmax0 * bmax0 * 4) < _LIMIT


def quartic_box_search(I: int, J: int, amax: int, hmax: int, bmax0: int, *, backend: str = None):
    if backend is None:
        backend = "compiled" if _use_ext() else "python"
    if backend == "compiled" and _ext is not None and _fits_int64(I, J, amax, hmax, bmax0):
        return _ext.quartic_box_search(I, J, amax, hmax, bmax0)
    return _pykernels.quartic_box_search(I, J, amax, hmax, bmax0)
