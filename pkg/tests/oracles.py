"""Brute-force reference computations used only by the tests.

None of these import the library routine they are checked against.
"""
from fractions import Fraction
from math import isqrt


def _unit_square(u, p):
    if p == 2:
        return u % 8 == 1
    return any((z * z - u) % p == 0 for z in range(1, p))


def _vp(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def value_is_square(n, p):
    """n a nonzero integer; square in Q_p?"""
    v, u = _vp(n, p)
    return v % 2 == 0 and _unit_square(u, p)


def residue_solvable(coeffs, p, max_level=40):
    """True/False: does z^2 = f(x, y) have a Q_p-point; None if undecided by max_level.

    Residue classes of x in Z_p (points (x, 1)) and of y in pZ_p (points
    (1, y)) are refined one digit at a time. A class is dropped when its
    representative value v satisfies level >= v_p(v) + 1 (+2 at p = 2),
    since then every member has the same square class as v.
    """
    a, b, c, d, e = coeffs
    extra = 3 if p == 2 else 1

    def chart1(x):
        return (((a * x + b) * x + c) * x + d) * x + e

    def chart2(y):
        return (((e * y + d) * y + c) * y + b) * y + a

    classes = [(chart1, r, 1) for r in range(p)] + [(chart2, 0, 1)]
    while classes:
        nxt = []
        for g, r, k in classes:
            val = g(r)
            if val == 0 or value_is_square(val, p):
                return True
            v, _ = _vp(val, p)
            if k >= v + extra:
                continue
            if k >= max_level:
                return None
            step = p**k
            nxt.extend((g, r + t * step, k + 1) for t in range(p))
        classes = nxt
    return False


def solutions_mod(coeffs, p, k):
    """Primitive (x, y) mod p^k with f(x, y) a square mod p^k (naive triple loop)."""
    m = p**k
    squares = {z * z % m for z in range(m)}
    a, b, c, d, e = coeffs
    out = []
    for x in range(m):
        for y in range(m):
            if x % p == 0 and y % p == 0:
                continue
            v = (a * x**4 + b * x**3 * y + c * x * x * y * y + d * x * y**3 + e * y**4) % m
            if v in squares:
                out.append((x, y))
    return out


def integer_points_on_curve(A, B, bound):
    """Integral affine points of y^2 = x^3 + Ax + B with |x| <= bound."""
    pts = []
    for x in range(-bound, bound + 1):
        r = x**3 + A * x + B
        if r < 0:
            continue
        s = isqrt(r)
        if s * s == r:
            pts.extend({(x, s), (x, -s)})
    return sorted(set(pts))


def torsion_by_group_law(A, B, bound=200):
    """#E(Q)_tors from integral points by brute-force order computation (orders up to 12)."""

    def add(P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        (x1, y1), (x2, y2) = P, Q
        if x1 == x2 and y1 == -y2:
            return None
        if P == Q:
            lam = (3 * x1 * x1 + A) / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - x1 - x2
        return (x3, lam * (x1 - x3) - y1)

    count = 1
    for x, y in integer_points_on_curve(A, B, bound):
        P = (Fraction(x), Fraction(y))
        Q = P
        for _ in range(12):
            Q = add(Q, P)
            if Q is None:
                count += 1
                break
    return count


def brute_class_count(p, X, M):
    """GL2(Z)-classes (by the supplied key function) of integral quartics with
    |coefficients| <= M, height < X, nonzero discriminant and p^2 | discriminant.

    Returns the list of raw coefficient tuples; the caller canonicalises.
    """
    import numpy as np

    r = np.arange(-M, M + 1, dtype=np.int64)
    a, b, c, d, e = (t.ravel() for t in np.meshgrid(r, r, r, r, r, indexing="ij"))
    I = 12 * a * e - 3 * b * d + c * c
    J = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c**3
    D27 = 4 * I**3 - J * J
    keep = (D27 != 0) & (4 * np.abs(I) ** 3 < 27 * X) & (J * J < 27 * X) & ((D27 // 27) % (p * p) == 0)
    return [tuple(int(v) for v in t) for t in zip(*(x[keep] for x in (a, b, c, d, e)))]
