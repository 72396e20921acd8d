"""Small exact number-theory helpers shared by the other modules."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from sympy import factorint
from sympy.ntheory import sqrt_mod

__all__ = [
    "valuation",
    "prime_factors",
    "is_square_int",
    "is_square_Qp",
    "squarefree_part",
    "sqrt_mod_prime_power",
    "content",
]


def valuation(n, p: int) -> int:
    """p-adic valuation of a nonzero integer or Fraction."""
    if isinstance(n, Fraction):
        return valuation(n.numerator, p) - valuation(n.denominator, p)
    if n == 0:
        raise ValueError("valuation of zero")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@lru_cache(maxsize=65536)
def _factor(n: int) -> tuple:
    return tuple(sorted(factorint(n).items()))


def prime_factors(n) -> list[int]:
    """Sorted primes dividing the nonzero integer (or rational) ``n``."""
    if isinstance(n, Fraction):
        return sorted(set(prime_factors(n.numerator)) | set(prime_factors(n.denominator)))
    n = abs(int(n))
    if n == 0:
        raise ValueError("prime_factors(0)")
    if n == 1:
        return []
    return [p for p, _ in _factor(n)]


def factorization(n: int) -> dict[int, int]:
    n = abs(int(n))
    return dict(_factor(n)) if n > 1 else {}


def is_square_int(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def squarefree_part(n: int) -> int:
    """Signed squarefree part: n = squarefree_part(n) * m**2."""
    if n == 0:
        raise ValueError("squarefree_part(0)")
    s = -1 if n < 0 else 1
    for p, e in factorization(n).items():
        if e % 2:
            s *= p
    return s


def _legendre(u: int, p: int) -> int:
    return pow(u % p, (p - 1) // 2, p)


def is_square_Qp(x, p: int) -> bool:
    """Whether the rational ``x`` is a square in Q_p (zero counts as a square)."""
    if x == 0:
        return True
    x = Fraction(x)
    v = valuation(x, p)
    if v % 2:
        return False
    # unit part u = num/den with both prime to p; u is a square iff num*den is
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
    while den % p == 0:
        den //= p
    u = num * den
    if p == 2:
        return u % 8 == 1
    return _legendre(u, p) == 1


def sqrt_mod_prime_power(u: int, p: int, k: int) -> int:
    """A square root of the unit square ``u`` modulo ``p**k``.

    For p = 2 the root is correct modulo 2**(k-1), which is all that
    a unit square determines.
    """
    mod = p**k
    u %= mod
    if p == 2:
        if u % 8 != 1:
            raise ValueError("not a 2-adic unit square")
        r = 1
        # r^2 = u mod 2^j, lift to 2^(j+1)
        for j in range(3, k):
            if (r * r - u) % (2 ** (j + 1)):
                r += 2 ** (j - 1)
        return r % mod
    r = sqrt_mod(u % p, p)
    if r is None:
        raise ValueError("not a square modulo p")
    m = p
    while m < mod:
        m = min(m * m, mod)
        # Newton step for r^2 - u
        r = (r - (r * r - u) * pow(2 * r, -1, m)) % m
    return r % mod


def content(coeffs) -> int:
    g = 0
    for c in coeffs:
        g = gcd(g, int(c))
    return g
