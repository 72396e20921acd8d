"""Local solvability of z^2 = f(x, y) over R and over Q_p."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .arith import is_square_Qp, prime_factors, sqrt_mod_prime_power, valuation
from .errors import ConsistencyError, DomainError
from .quartics import QuarticForm

__all__ = [
    "INFINITY",
    "SolvabilityCertificate",
    "solvable_over_R",
    "solvable_over_Qp",
    "relevant_primes",
    "is_locally_solvable",
    "verify_certificate",
]

INFINITY = "inf"


@dataclass(frozen=True)
class SolvabilityCertificate:
    """Outcome of a local check at one place.

    For a prime place the witness ``(x, y, z)`` is integral and satisfies
    ``z^2 = f(x, y) mod p^precision`` for the primitive integral model of f;
    ``lifts`` names the criterion guaranteeing an exact Q_p-point
    (``"square"``: the value f(x, y) is itself a square in Q_p; ``"hensel-root"``:
    f(x, 1) has a p-adic root near x). At infinity the witness is a float
    triple with z = sqrt(f(x, y)).
    """

    place: Union[int, str]
    solvable: bool
    witness: Optional[tuple] = None
    precision: Optional[int] = None
    lifts: Optional[str] = None

    def to_json(self) -> dict:
        w = None if self.witness is None else [
            (float(t) if isinstance(t, float) else str(t) if isinstance(t, Fraction) else t) for t in self.witness
        ]
        return {
            "place": self.place,
            "solvable": self.solvable,
            "witness": w,
            "precision": self.precision,
        }


# ---------------------------------------------------------------------------
# the real place


def solvable_over_R(f: QuarticForm) -> SolvabilityCertificate:
    """z^2 = f has a real point unless f is negative definite; decided exactly."""
    from sympy import Poly, symbols

    if f.a > 0:
        return SolvabilityCertificate(INFINITY, True, (1, 0, math.sqrt(f.a)), None, "real")
    if f.e > 0:
        return SolvabilityCertificate(INFINITY, True, (0, 1, math.sqrt(f.e)), None, "real")
    if f.a == 0 or f.e == 0:
        # a real root at (1:0) or (0:1)
        return SolvabilityCertificate(INFINITY, True, (1, 0, 0.0) if f.a == 0 else (0, 1, 0.0), None, "real")
    x = symbols("x")
    P = Poly([Fraction(t) for t in f.coeffs], x, domain="QQ")
    if P.count_roots() == 0:
        return SolvabilityCertificate(INFINITY, False)
    # separable with a real root: sign changes, so sample between isolating intervals
    eps = Fraction(1, 4)
    while True:
        ivs = [(Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q))) for (lo, hi), _ in P.intervals(eps=eps)]
        if all(ivs[i][1] < ivs[i + 1][0] for i in range(len(ivs) - 1)):
            break
        eps /= 4
    pts = [ivs[0][0] - 1, ivs[-1][1] + 1]
    pts += [(ivs[i][1] + ivs[i + 1][0]) / 2 for i in range(len(ivs) - 1)]
    for t in pts:
        v = f(t, 1)
        if v > 0:
            return SolvabilityCertificate(INFINITY, True, (t, 1, math.sqrt(v)), None, "real")
    raise ConsistencyError("real root found but no positive sample value")


# ---------------------------------------------------------------------------
# p-adic places


def _taylor(coeffs_low, x0):
    """Taylor coefficients of g at x0 (coeffs_low are low-to-high)."""
    c = list(coeffs_low)
    n = len(c)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            c[j] += x0 * c[j + 1]
    return c


def _v(n, p):
    return math.inf if n == 0 else valuation(n, p)


@dataclass
class _Search:
    p: int
    max_depth: int
    steps: int = 0
    deepest: int = 0

    def run(self, g_low, x0, n, depth=0):
        """Is there x = x0 (mod p^n) with g(x) a square in Q_p?  Returns (x, lift-kind) or None."""
        p = self.p
        self.steps += 1
        self.deepest = max(self.deepest, depth)
        if depth > self.max_depth:
            raise ConsistencyError(f"p-adic search at p={p} exceeded depth {self.max_depth}")
        T = _taylor(g_low, x0)
        g0 = T[0]
        if g0 == 0:
            return x0, "root"
        if is_square_Qp(g0, p):
            return x0, "square"
        mu = valuation(g0, p)
        lam = _v(T[1], p)
        if lam != math.inf and mu > 2 * lam and mu - lam >= n:
            return x0, "hensel-root"
        e = 3 if p == 2 else 1
        drift = min(_v(T[k], p) + n * k for k in range(1, len(T)))
        if drift >= mu + e:
            # every x in the class has f(x) in the square class of f(x0)
            return None
        step = p**n
        for t in range(p):
            hit = self.run(g_low, x0 + t * step, n + 1, depth + 1)
            if hit is not None:
                return hit
        return None


def _witness(f: QuarticForm, x, y, kind, p):
    val = f(x, y)
    if kind in ("root", "hensel-root"):
        prec = _v(val, p) if val else 64
        return (x, y, 0), prec, kind
    m = valuation(val, p) // 2
    u = val // p ** (2 * m)
    k = 12
    r = sqrt_mod_prime_power(u, p, k)
    return (x, y, p**m * r), 2 * m + k, "square"


def _depth_bound(f: QuarticForm, p: int) -> int:
    D = f.poly_discriminant
    return 2 * valuation(Fraction(D), p) + 8 if D else 0


def solvable_over_Qp(f: QuarticForm, p: int) -> SolvabilityCertificate:
    """Decide whether z^2 = f(x, y) has a point over Q_p (exact recursive search)."""
    if f.poly_discriminant == 0:
        raise DomainError("zero discriminant")
    g = f.primitive_integral()
    search = _Search(p, _depth_bound(g, p))
    # chart y = 1, x in Z_p
    low = list(reversed(g.coeffs))
    hit = search.run(low, 0, 0)
    if hit is not None:
        x0, kind = hit
        w, prec, kind = _witness(g, x0, 1, kind, p)
        return SolvabilityCertificate(p, True, w, prec, kind)
    # chart x = 1, y in pZ_p: g(1, y) low-to-high is a, b, c, d, e
    low = list(g.coeffs)
    hit = search.run(low, 0, 1)
    if hit is not None:
        y0, kind = hit
        w, prec, kind = _witness(g, 1, y0, kind, p)
        return SolvabilityCertificate(p, True, w, prec, kind)
    return SolvabilityCertificate(p, False)


def relevant_primes(f: QuarticForm) -> list[int]:
    """{2} together with the primes dividing Delta(f); outside this set f is always solvable."""
    D = f.discriminant
    if D == 0:
        raise DomainError("zero discriminant")
    g = f.primitive_integral()
    return sorted({2} | set(prime_factors(Fraction(g.discriminant))))


def is_locally_solvable(f: QuarticForm, *, stop_early: bool = True):
    """(solvable everywhere?, certificates) over R and every relevant prime."""
    certs = [solvable_over_R(f)]
    if not certs[0].solvable and stop_early:
        return False, certs
    for p in relevant_primes(f):
        c = solvable_over_Qp(f, p)
        certs.append(c)
        if not c.solvable and stop_early:
            return False, certs
    return all(c.solvable for c in certs), certs


def verify_certificate(f: QuarticForm, cert: SolvabilityCertificate) -> bool:
    """Re-check a certificate's witness against f."""
    if not cert.solvable or cert.witness is None:
        return not cert.solvable
    x, y, z = cert.witness
    if cert.place == INFINITY:
        v = float(f(x, y))
        return v >= 0 and abs(z * z - v) <= 1e-9 * max(1.0, abs(v))
    p = cert.place
    g = f.primitive_integral()
    val = g(x, y)
    if (z * z - val) % p**cert.precision:
        return False
    if cert.lifts == "square":
        return is_square_Qp(val, p)
    return True
