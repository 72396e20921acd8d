"""Short Weierstrass curves y^2 = x^3 + A x + B over Q, keyed by the integer pair (A, B)."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Iterator, Optional, Sequence

from .arith import factorization
from .errors import ConfigurationError, DomainError
from . import kernels

__all__ = [
    "CurveKey",
    "CurveStats",
    "CongruenceCondition",
    "parse_congruence",
    "height",
    "discriminant",
    "is_singular",
    "is_minimal",
    "minimal_model",
    "height_box",
    "enumerate_minimal",
    "count_minimal",
    "singular_locus_count",
    "torsion_order",
    "torsion_points",
    "two_torsion_roots",
    "curve_stats",
    "csv_row",
    "CSV_HEADER",
]


@dataclass(frozen=True, order=True)
class CurveKey:
    """The pair (A, B) naming E_AB : y^2 = x^3 + A x + B.

    No validation happens here: heights of singular pairs are still
    meaningful, so callers that need a genuine curve use
    :func:`require_nonsingular`.
    """

    A: int
    B: int

    def __post_init__(self):
        object.__setattr__(self, "A", int(self.A))
        object.__setattr__(self, "B", int(self.B))

    @property
    def height(self) -> int:
        return height(self)

    @property
    def discriminant(self) -> int:
        return discriminant(self)

    def rescaled(self, q: int) -> "CurveKey":
        """The isomorphic pair (q^4 A, q^6 B)."""
        return CurveKey(q**4 * self.A, q**6 * self.B)


@dataclass(frozen=True)
class CurveStats:
    height: int
    curve_discriminant: int
    torsion_order: int


def _key(key) -> CurveKey:
    if isinstance(key, CurveKey):
        return key
    A, B = key
    return CurveKey(A, B)


def height(key) -> int:
    """Naive height max(|4A^3|, 27B^2)."""
    k = _key(key)
    return max(abs(4 * k.A**3), 27 * k.B**2)


def discriminant(key) -> int:
    """-(4A^3 + 27B^2); zero exactly for singular pairs."""
    k = _key(key)
    return -(4 * k.A**3 + 27 * k.B**2)


def is_singular(key) -> bool:
    return discriminant(key) == 0


def require_nonsingular(key) -> CurveKey:
    k = _key(key)
    if is_singular(k):
        raise DomainError(f"singular pair (A,B)=({k.A},{k.B}): 4A^3+27B^2 = 0")
    return k


def is_minimal(key) -> bool:
    """True iff no prime p has p^4 | A and p^6 | B.

    Only primes with p^4 <= |A| (or p^6 <= |B| when A = 0) can qualify,
    so the factorisation needed is that of a small number.
    """
    k = _key(key)
    A, B = k.A, k.B
    if A == 0 and B == 0:
        return False
    if A != 0:
        cands = [p for p, e in factorization(A).items() if e >= 4]
        return not any(B % p**6 == 0 for p in cands)
    return not any(e >= 6 for e in factorization(B).values())


def minimal_model(key) -> tuple[CurveKey, int]:
    """Return (minimal pair, q) with key = (q^4 A', q^6 B')."""
    k = require_nonsingular(key)
    A, B, q = k.A, k.B, 1
    changed = True
    while changed:
        changed = False
        primes = factorization(A) if A else factorization(B)
        for p in primes:
            if A % p**4 == 0 and B % p**6 == 0:
                A //= p**4
                B //= p**6
                q *= p
                changed = True
    return CurveKey(A, B), q


# ---------------------------------------------------------------------------
# congruence filters


@dataclass(frozen=True)
class CongruenceCondition:
    """A ≡ a_residue and/or B ≡ b_residue (mod modulus); ``None`` means unconstrained."""

    modulus: int
    a_residue: Optional[int] = None
    b_residue: Optional[int] = None

    def __post_init__(self):
        if self.modulus < 1:
            raise ConfigurationError(f"modulus must be positive, got {self.modulus}")
        for r in (self.a_residue, self.b_residue):
            if r is not None and not 0 <= r < self.modulus:
                raise ConfigurationError(
                    f"residue {r} not in [0, {self.modulus}) for modulus {self.modulus}"
                )
        if self.a_residue is None and self.b_residue is None:
            raise ConfigurationError("congruence condition constrains neither A nor B")

    def accepts(self, A: int, B: int) -> bool:
        m = self.modulus
        if self.a_residue is not None and A % m != self.a_residue:
            return False
        if self.b_residue is not None and B % m != self.b_residue:
            return False
        return True

    def __str__(self):
        parts = []
        if self.a_residue is not None:
            parts.append(f"A={self.a_residue}")
        if self.b_residue is not None:
            parts.append(f"B={self.b_residue}")
        return f"{self.modulus}:" + ",".join(parts)


_COND_RE = re.compile(r"^\s*(\d+)\s*:\s*(.+)$")


def parse_congruence(text: str) -> CongruenceCondition:
    """Parse ``"m:A=r"``, ``"m:B=s"`` or ``"m:A=r,B=s"``."""
    m = _COND_RE.match(text)
    if not m:
        raise ConfigurationError(f"bad congruence condition {text!r}; expected 'm:A=r,B=s'")
    modulus = int(m.group(1))
    res = {}
    for part in m.group(2).split(","):
        name, sep, val = part.partition("=")
        name = name.strip().upper()
        if not sep or name not in ("A", "B") or name in res:
            raise ConfigurationError(f"bad congruence term {part!r} in {text!r}")
        try:
            res[name] = int(val)
        except ValueError:
            raise ConfigurationError(f"bad residue {val!r} in {text!r}") from None
    return CongruenceCondition(modulus, res.get("A"), res.get("B"))


def _conditions(congruence_filter) -> tuple[CongruenceCondition, ...]:
    if not congruence_filter:
        return ()
    out = []
    for c in congruence_filter:
        if isinstance(c, str):
            c = parse_congruence(c)
        elif not isinstance(c, CongruenceCondition):
            c = CongruenceCondition(*c)
        out.append(c)
    return tuple(out)


# ---------------------------------------------------------------------------
# enumeration


def height_box(X: int) -> tuple[int, int]:
    """Largest |A|, |B| with 4|A|^3 < X and 27B^2 < X."""
    if X < 1:
        raise ConfigurationError(f"height bound must be >= 1, got {X}")
    amax = int(round((X / 4) ** (1 / 3))) + 2
    while amax >= 0 and 4 * amax**3 >= X:
        amax -= 1
    bmax = isqrt(max(X - 1, 0) // 27) + 1
    while bmax >= 0 and 27 * bmax**2 >= X:
        bmax -= 1
    return amax, bmax


def enumerate_minimal(X: int, congruence_filter: Iterable = None) -> Iterator[CurveKey]:
    """Yield minimal nonsingular (A, B) with H(A,B) < X in lexicographic order."""
    conds = _conditions(congruence_filter)
    if X < 1:
        raise ConfigurationError(f"height bound must be >= 1, got {X}")
    amax, bmax = height_box(X)
    if amax < 0 or bmax < 0:
        return
    sieve_primes = kernels.sieve_primes(amax, bmax)
    for A in range(-amax, amax + 1):
        a_primes = [p for p in sieve_primes if A % p**4 == 0]
        for B in range(-bmax, bmax + 1):
            if 4 * A**3 + 27 * B * B == 0:
                continue
            if any(B % p**6 == 0 for p in a_primes):
                continue
            if conds and not all(c.accepts(A, B) for c in conds):
                continue
            yield CurveKey(A, B)


def count_minimal(X: int) -> tuple[int, int]:
    """(#minimal nonsingular pairs, #nonsingular pairs) with H < X, via the compiled sieve."""
    amax, bmax = height_box(X)
    if amax < 0 or bmax < 0:
        return 0, 0
    return kernels.count_minimal_box(amax, bmax)


def singular_locus_count(X: int) -> int:
    """#{n : H(-3n^2, 2n^3) < X}; H(-3n^2, 2n^3) = 108 n^6."""
    if X < 1:
        raise ConfigurationError(f"height bound must be >= 1, got {X}")
    n = 0
    while 108 * (n + 1) ** 6 < X:
        n += 1
    return 2 * n + 1


# ---------------------------------------------------------------------------
# torsion (Lutz-Nagell)


def _add(P, Q, A):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2 and y1 == -y2:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + A) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return x3, lam * (x1 - x3) - y1


def _integer_roots_cubic(A: int, c: int) -> list[int]:
    """Integer roots of x^3 + A x + c."""
    import numpy as np

    roots = set()
    for r in np.roots([1, 0, A, c]):
        if abs(r.imag) > 1e-6 * (1 + abs(r.real)):
            continue
        x0 = int(round(r.real))
        for x in (x0 - 1, x0, x0 + 1):
            if x**3 + A * x + c == 0:
                roots.add(x)
    return sorted(roots)


def _order_if_torsion(P, A: int, bound: int = 12) -> Optional[int]:
    Q = P
    for n in range(1, bound + 1):
        if Q is None:
            return n
        if Q[0].denominator != 1 or Q[1].denominator != 1:
            return None
        Q = _add(Q, P, A)
    return None


def torsion_points(key) -> list[tuple[int, int]]:
    """Affine rational torsion points of E_AB (identity omitted)."""
    k = require_nonsingular(key)
    A, B = k.A, k.B
    D = 4 * A**3 + 27 * B**2
    ys = {0}
    for y in _square_divisor_roots(D):
        ys.add(y)
    pts = []
    for y in sorted(ys):
        for x in _integer_roots_cubic(A, B - y * y):
            for yy in {y, -y}:
                P = (Fraction(x), Fraction(yy))
                if _order_if_torsion(P, A) is not None:
                    pts.append((x, yy))
    return sorted(set(pts))


def _square_divisor_roots(D: int) -> list[int]:
    """Positive y with y^2 | D."""
    fac = factorization(D)
    ys = [1]
    for p, e in fac.items():
        ys = [y * p**j for y in ys for j in range(e // 2 + 1)]
    return ys


def torsion_order(key) -> int:
    """#E(Q)_tors via Lutz-Nagell on the integral model y^2 = x^3 + A x + B."""
    return 1 + len(torsion_points(key))


def two_torsion_roots(key) -> list[int]:
    """Rational (hence integer) roots of x^3 + A x + B."""
    k = _key(key)
    return _integer_roots_cubic(k.A, k.B)


def curve_stats(key) -> CurveStats:
    return CurveStats(height(key), discriminant(key), torsion_order(key))


CSV_HEADER = "A,B,height,disc,minimal,torsion"


def csv_row(key, with_torsion: bool = True) -> str:
    k = _key(key)
    t = torsion_order(k) if with_torsion else ""
    return f"{k.A},{k.B},{height(k)},{discriminant(k)},{int(is_minimal(k))},{t}"
