"""Pure-Python versions of the hot loops; reference semantics for ``_kernels.pyx``."""
from math import isqrt


def count_minimal_box(amax, bmax, primes):
    """Count (#minimal nonsingular, #nonsingular) pairs with |A| <= amax, |B| <= bmax."""
    n_min = 0
    n_all = 0
    p6 = [p**6 for p in primes]
    for A in range(-amax, amax + 1):
        bad = [q for p, q in zip(primes, p6) if A % p**4 == 0]
        for B in range(-bmax, bmax + 1):
            if 4 * A * A * A + 27 * B * B == 0:
                continue
            n_all += 1
            for q in bad:
                if B % q == 0:
                    break
            else:
                n_min += 1
    return n_min, n_all


def quartic_box_search(I, J, amax, hmax, bmax0):
    """Integral (a,b,c,d,e) with invariants (I, J) in the normalised search box.

    a != 0: 1 <= |a| <= amax, 0 <= b <= 2|a|, |8ac - 3b^2| <= hmax, with d
    solved from the J-equation (a quadratic) and e from the I-equation.
    a == 0: 1 <= b <= bmax0, 0 <= c < 3b, d and e solved linearly.
    """
    out = []
    for a in range(-amax, amax + 1):
        if a == 0:
            continue
        aa = abs(a)
        for b in range(0, 2 * aa + 1):
            t = 3 * b * b
            if a > 0:
                clo = -((hmax - t) // (8 * a))
                chi = (hmax + t) // (8 * a)
            else:
                clo = -((hmax + t) // (8 * aa))
                chi = (hmax - t) // (8 * aa)
            alpha = -324 * a * a
            for c in range(clo, chi + 1):
                beta = 324 * a * b * c - 81 * b * b * b
                k = 72 * a * c - 27 * b * b
                gamma = k * (I - c * c) - 24 * a * c * c * c - 12 * a * J
                disc = beta * beta - 4 * alpha * gamma
                if disc < 0:
                    continue
                s = isqrt(disc)
                if s * s != disc:
                    continue
                for num in ((-beta + s), (-beta - s)) if s else (-beta,):
                    den = 2 * alpha
                    if num % den:
                        continue
                    d = num // den
                    en = I + 3 * b * d - c * c
                    if en % (12 * a):
                        continue
                    e = en // (12 * a)
                    out.append((a, b, c, d, e))
    for b in range(1, bmax0 + 1):
        for c in range(0, 3 * b):
            dn = c * c - I
            if dn % (3 * b):
                continue
            d = dn // (3 * b)
            en = 9 * b * c * d - 2 * c * c * c - J
            if en % (27 * b * b):
                continue
            out.append((0, b, c, d, en // (27 * b * b)))
    return out
