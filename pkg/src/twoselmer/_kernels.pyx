# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled versions of the loops in _pykernels.py (same semantics, int64 arithmetic).

Callers must check that intermediate values fit; see kernels.py.
"""
from libc.math cimport sqrt

ctypedef long long i64


cdef inline i64 _isqrt(i64 n):
    cdef i64 s = <i64> sqrt(<double> n)
    while s > 0 and s * s > n:
        s -= 1
    while (s + 1) * (s + 1) <= n:
        s += 1
    return s


cdef inline i64 _floordiv(i64 a, i64 b):
    # cdivision is off, so // rounds toward -inf as in Python
    return a // b


cdef inline i64 _pymod(i64 a, i64 b):
    return a % b


def count_minimal_box(i64 amax, i64 bmax, primes):
    cdef i64 A, B, n_min = 0, n_all = 0
    cdef int k, nb, np_ = len(primes)
    cdef i64 p4[16]
    cdef i64 p6[16]
    cdef i64 bad[16]
    cdef bint ok
    if np_ > 16:
        raise ValueError("too many sieve primes")
    for k in range(np_):
        p4[k] = (<i64> primes[k]) ** 4
        p6[k] = (<i64> primes[k]) ** 6
    for A in range(-amax, amax + 1):
        nb = 0
        for k in range(np_):
            if A % p4[k] == 0:
                bad[nb] = p6[k]
                nb += 1
        for B in range(-bmax, bmax + 1):
            if 4 * A * A * A + 27 * B * B == 0:
                continue
            n_all += 1
            ok = True
            for k in range(nb):
                if B % bad[k] == 0:
                    ok = False
                    break
            if ok:
                n_min += 1
    return n_min, n_all


def quartic_box_search(i64 I, i64 J, i64 amax, i64 hmax, i64 bmax0):
    cdef i64 a, aa, b, c, t, clo, chi, alpha, beta, kk, gamma, disc, s, num, den, d, en, dn
    cdef int sgn
    out = []
    for a in range(-amax, amax + 1):
        if a == 0:
            continue
        aa = a if a > 0 else -a
        alpha = -324 * a * a
        den = 2 * alpha
        for b in range(0, 2 * aa + 1):
            t = 3 * b * b
            if a > 0:
                clo = -_floordiv(hmax - t, 8 * a)
                chi = _floordiv(hmax + t, 8 * a)
            else:
                clo = -_floordiv(hmax + t, 8 * aa)
                chi = _floordiv(hmax - t, 8 * aa)
            for c in range(clo, chi + 1):
                beta = 324 * a * b * c - 81 * b * b * b
                kk = 72 * a * c - 27 * b * b
                gamma = kk * (I - c * c) - 24 * a * c * c * c - 12 * a * J
                disc = beta * beta - 4 * alpha * gamma
                if disc < 0:
                    continue
                s = _isqrt(disc)
                if s * s != disc:
                    continue
                for sgn in range(2):
                    if sgn == 1 and s == 0:
                        break
                    num = -beta + s if sgn == 0 else -beta - s
                    if _pymod(num, den) != 0:
                        continue
                    d = _floordiv(num, den)
                    en = I + 3 * b * d - c * c
                    if _pymod(en, 12 * a) != 0:
                        continue
                    out.append((a, b, c, d, _floordiv(en, 12 * a)))
    for b in range(1, bmax0 + 1):
        for c in range(0, 3 * b):
            dn = c * c - I
            if _pymod(dn, 3 * b) != 0:
                continue
            d = _floordiv(dn, 3 * b)
            en = 9 * b * c * d - 2 * c * c * c - J
            if _pymod(en, 27 * b * b) != 0:
                continue
            out.append((0, b, c, d, _floordiv(en, 27 * b * b)))
    return out
