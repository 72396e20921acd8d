"""Binary quartic forms a x^4 + b x^3 y + c x^2 y^2 + d x y^3 + e y^4.

Conventions
-----------
A 2x2 matrix ``g = [[p, q], [r, s]]`` acts by substitution on the row
vector ``(x, y)``::

    (g . f)(x, y) = f((x, y) g) = f(p x + r y, q x + s y)

This is a left action: ``act(g1, act(g2, f)) == act(g1 @ g2, f)``.
The twisted action ``g * f = det(g)^-2 (g . f)`` preserves I and J.

Reduction uses a positive-definite quadratic covariant built from the
roots ``v_j`` of ``f = k * prod_j L_j``::

    Q_f = sum_j |L_j|^2 / w_j,    w_j = |k| prod_{i != j} |L_i(v_j)|

which satisfies ``Q_{g.f} = |det g|^-3 g.Q_f`` for real ``g`` (exact
covariance for det +-1), and
``|f(u)| <= sqrt|D| Q_f(u)^2 / 16`` on C^2 (AM-GM), where D is the
discriminant of f. The latter bound turns Gauss reduction of ``Q_f``
into explicit coefficient boxes for the enumeration.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import mpmath
import numpy as np

from .arith import content, prime_factors
from .errors import ConsistencyError, DomainError, SearchCapExceeded
from . import kernels

__all__ = [
    "QuarticForm",
    "InvariantPair",
    "Transform",
    "invariants",
    "act",
    "act_twisted",
    "has_rational_linear_factor",
    "covariant_quadratic",
    "seminorm",
    "reduce_Z",
    "canonical_key",
    "equivalent_over_Z",
    "find_Z_transform",
    "p_neighbors",
    "equivalent_over_Q",
    "search_bounds",
    "enumerate_integral_with_invariants",
    "EnumerationResult",
    "DEFAULT_BOX_CAP",
]

DEFAULT_BOX_CAP = 10**6
_DPS = 40


def _num(x):
    """Exact rational normalised to int when integral."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class QuarticForm:
    a: object
    b: object
    c: object
    d: object
    e: object

    def __post_init__(self):
        for name in "abcde":
            object.__setattr__(self, name, _num(getattr(self, name)))
        if not any(self.coeffs):
            raise DomainError("the zero form is not a quartic form")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "QuarticForm":
        if len(coeffs) != 5:
            raise ValueError(f"need 5 coefficients, got {len(coeffs)}")
        return cls(*coeffs)

    @classmethod
    def parse(cls, text: str) -> "QuarticForm":
        """Parse ``"a,b,c,d,e"`` (entries may be fractions like ``3/4``)."""
        return cls.from_coeffs([Fraction(t.strip()) for t in text.split(",")])

    @property
    def coeffs(self) -> tuple:
        return (self.a, self.b, self.c, self.d, self.e)

    def __call__(self, x, y):
        a, b, c, d, e = self.coeffs
        return (((a * x + b * y) * x + c * y * y) * x + d * y**3) * x + e * y**4

    def __neg__(self):
        return QuarticForm(*(-t for t in self.coeffs))

    def scale(self, k) -> "QuarticForm":
        return QuarticForm(*(k * t for t in self.coeffs))

    @property
    def is_integral(self) -> bool:
        return all(isinstance(t, int) for t in self.coeffs)

    @property
    def I(self):
        a, b, c, d, e = self.coeffs
        return _num(12 * a * e - 3 * b * d + c * c)

    @property
    def J(self):
        a, b, c, d, e = self.coeffs
        return _num(72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c**3)

    @property
    def discriminant(self):
        """Delta = -(4A^3 + 27B^2) in the normalised invariants A = -I/3, B = -J/27."""
        return invariants(self).discriminant

    @property
    def poly_discriminant(self):
        """Classical discriminant of the quartic, (4I^3 - J^2)/27."""
        return _num(Fraction(4 * self.I**3 - self.J**2, 27))

    def primitive_integral(self) -> "QuarticForm":
        """Integral form in the same Q^*2-class, with square-free content."""
        den = 1
        for t in self.coeffs:
            if isinstance(t, Fraction):
                den = math.lcm(den, t.denominator)
        f = self.scale(den * den) if den > 1 else self
        g = content(f.coeffs)
        sq = 1
        for p in prime_factors(g):
            while g % (sq * p) ** 2 == 0:
                sq *= p
        return QuarticForm(*(t // (sq * sq) for t in f.coeffs))

    def to_csv(self) -> str:
        return ",".join(str(t) for t in self.coeffs)

    def __str__(self):
        return "(" + ", ".join(str(t) for t in self.coeffs) + ")"


@dataclass(frozen=True)
class InvariantPair:
    I: object
    J: object
    A_norm: object
    B_norm: object

    @property
    def discriminant(self):
        return _num(-(4 * Fraction(self.A_norm) ** 3 + 27 * Fraction(self.B_norm) ** 2))


def invariants(f: QuarticForm) -> InvariantPair:
    I, J = f.I, f.J
    return InvariantPair(I, J, _num(Fraction(-I, 3) if isinstance(I, int) else -I / 3),
                         _num(Fraction(-J, 27) if isinstance(J, int) else -J / 27))


def invariant_pair(I, J) -> InvariantPair:
    return InvariantPair(_num(I), _num(J), _num(-Fraction(I) / 3), _num(-Fraction(J) / 27))


@dataclass(frozen=True)
class Transform:
    """The 2x2 matrix [[p, q], [r, s]] (exact rationals, nonzero determinant)."""

    p: object
    q: object
    r: object
    s: object

    def __post_init__(self):
        for name in "pqrs":
            object.__setattr__(self, name, _num(getattr(self, name)))
        if self.det == 0:
            raise DomainError("singular transform")

    @property
    def det(self):
        return _num(self.p * self.s - self.q * self.r)

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def diag(cls, u, v):
        return cls(u, 0, 0, v)

    def __matmul__(self, other: "Transform") -> "Transform":
        p, q, r, s = self.p, self.q, self.r, self.s
        P, Q, R, S = other.p, other.q, other.r, other.s
        return Transform(p * P + q * R, p * Q + q * S, r * P + s * R, r * Q + s * S)

    def inverse(self) -> "Transform":
        d = Fraction(self.det)
        return Transform(self.s / d, -self.q / d, -self.r / d, self.p / d)

    @property
    def rows(self):
        return ((self.p, self.q), (self.r, self.s))


def _as_transform(g) -> Transform:
    if isinstance(g, Transform):
        return g
    (p, q), (r, s) = g
    return Transform(p, q, r, s)


def _substitute(coeffs, p, q, r, s) -> list:
    """Coefficients of f(p x + r y, q x + s y)."""
    X = (p, r)  # p x + r y as [x coeff, y coeff]
    Y = (q, s)
    out = [0, 0, 0, 0, 0]
    # powers of X and Y as coefficient lists in x^(n-k) y^k
    Xp = [[1]]
    Yp = [[1]]
    for _ in range(4):
        Xp.append(_mul_lin(Xp[-1], X))
        Yp.append(_mul_lin(Yp[-1], Y))
    for k, ck in enumerate(coeffs):
        if ck == 0:
            continue
        prod = _mul(Xp[4 - k], Yp[k])
        for i, t in enumerate(prod):
            out[i] += ck * t
    return out


def _mul_lin(poly, lin):
    res = [0] * (len(poly) + 1)
    for i, t in enumerate(poly):
        res[i] += t * lin[0]
        res[i + 1] += t * lin[1]
    return res


def _mul(u, v):
    res = [0] * (len(u) + len(v) - 1)
    for i, s in enumerate(u):
        if s == 0:
            continue
        for j, t in enumerate(v):
            res[i + j] += s * t
    return res


def act(g, f: QuarticForm) -> QuarticForm:
    """Plain action (g . f)(x, y) = f((x, y) g)."""
    g = _as_transform(g)
    return QuarticForm(*_substitute(f.coeffs, g.p, g.q, g.r, g.s))


def act_twisted(g, f: QuarticForm) -> QuarticForm:
    """Twisted action g * f = det(g)^-2 (g . f); preserves I and J."""
    g = _as_transform(g)
    det2 = Fraction(g.det) ** 2
    return QuarticForm(*(t / det2 for t in _substitute(f.coeffs, g.p, g.q, g.r, g.s)))


def _act_int(f: QuarticForm, p: int, q: int, r: int, s: int) -> QuarticForm:
    """Twisted action of a unimodular integer matrix on an integral form."""
    return QuarticForm(*_substitute(f.coeffs, p, q, r, s))


def has_rational_linear_factor(f: QuarticForm) -> bool:
    """Whether f splits off a linear factor over Q."""
    from sympy import Poly, symbols

    if f.a == 0 or f.e == 0:
        return True
    x = symbols("x")
    P = Poly([Fraction(t) for t in f.coeffs], x, domain="QQ")
    _, factors = P.factor_list()
    return any(fac.degree() == 1 for fac, _ in factors)


# ---------------------------------------------------------------------------
# reduction


def _polish(coeffs, approx):
    """Newton-refine float root approximations at working precision; None if that fails."""
    out = []
    deg = len(coeffs) - 1
    dcoeffs = [c * (deg - i) for i, c in enumerate(coeffs[:-1])]
    tol = mpmath.mpf(10) ** (-_DPS + 8)
    for z0 in approx:
        z = mpmath.mpc(float(z0.real), float(z0.imag))
        for _ in range(60):
            fz = mpmath.polyval(coeffs, z)
            dz = mpmath.polyval(dcoeffs, z)
            if dz == 0:
                return None
            step = fz / dz
            z -= step
            if abs(step) <= tol * max(1, abs(z)):
                break
        else:
            return None
        if abs(z.imag) <= tol * max(1, abs(z)):
            z = mpmath.mpc(z.real, 0)
        out.append(z)
    sep = min(abs(out[i] - out[j]) for i in range(deg) for j in range(i + 1, deg)) if deg > 1 else 1
    if sep <= mpmath.mpf(10) ** (-_DPS // 2) * max(1, max(abs(z) for z in out)):
        return None
    return out


def _poly_roots(coeffs):
    try:
        approx = np.roots([float(c) for c in coeffs])
    except (OverflowError, np.linalg.LinAlgError):
        approx = None
    rts = _polish(coeffs, approx) if approx is not None and len(approx) == len(coeffs) - 1 else None
    if rts is None:
        rts = mpmath.polyroots(coeffs, maxsteps=200, extraprec=2 * _DPS)
    return rts


def _roots(f: QuarticForm):
    """Homogeneous roots as (r, s) with linear factors s x - r y; and leading constant k."""
    a, b, c, d, e = (mpmath.mpf(Fraction(t).numerator) / Fraction(t).denominator for t in f.coeffs)
    if f.a != 0:
        rts = _poly_roots([a, b, c, d, e])
        return [(r, mpmath.mpf(1)) for r in rts], a
    if f.b == 0:
        raise DomainError("form with a double root at infinity")
    rts = _poly_roots([b, c, d, e])
    return [(r, mpmath.mpf(1)) for r in rts] + [(mpmath.mpf(-1), mpmath.mpf(0))], b


def covariant_quadratic(f: QuarticForm) -> tuple:
    """Coefficients (A, B, C) of the positive-definite covariant Q_f = A x^2 + B x y + C y^2."""
    with mpmath.workdps(_DPS):
        roots, k = _roots(f)
        A = B = C = mpmath.mpf(0)
        for j, (rj, sj) in enumerate(roots):
            w = abs(k)
            for i, (ri, si) in enumerate(roots):
                if i != j:
                    w *= abs(si * rj - ri * sj)
            if w == 0:
                raise DomainError("form is not separable")
            A += abs(sj) ** 2 / w
            B -= 2 * mpmath.re(sj * mpmath.conj(rj)) / w
            C += abs(rj) ** 2 / w
        return (+A, +B, +C)


def _q_act(Q, p, q, r, s):
    A, B, C = Q
    return (
        A * p * p + B * p * q + C * q * q,
        2 * A * p * r + B * (p * s + q * r) + 2 * C * q * s,
        A * r * r + B * r * s + C * s * s,
    )


def _q_seminorm(Q):
    A, B, C = Q
    return (A + C) / mpmath.sqrt(4 * A * C - B * B)


def _q_seminorm_float(Q):
    A, B, C = Q
    return (A + C) / math.sqrt(max(4 * A * C - B * B, 1e-300))


def seminorm(f: QuarticForm) -> float:
    """cosh of the hyperbolic distance from the root point of Q_f to i; >= 1, minimal on reduced forms."""
    with mpmath.workdps(_DPS):
        return float(_q_seminorm(covariant_quadratic(f)))


def _gauss_reduce(f: QuarticForm, Q):
    """Gauss-reduce Q_f by unimodular steps applied to f exactly; returns (form, Q, U) with form = U . f."""
    U = (1, 0, 0, 1)
    with mpmath.workdps(_DPS):
        for _ in range(10_000):
            A, B, C = Q
            k = int(mpmath.nint(-B / (2 * A)))
            if k:
                # (x, y) -> (x + k y, y)
                f = _act_int(f, 1, 0, k, 1)
                Q = _q_act(Q, 1, 0, k, 1)
                U = _mat_mul((1, 0, k, 1), U)
                A, B, C = Q
            if A > C * (1 + mpmath.mpf(10) ** (-30)):
                # (x, y) -> (y, -x)
                f = _act_int(f, 0, -1, 1, 0)
                Q = _q_act(Q, 0, -1, 1, 0)
                U = _mat_mul((0, -1, 1, 0), U)
                continue
            return f, Q, U
    raise ConsistencyError("Gauss reduction did not terminate")


def _mat_mul(m, n):
    p, q, r, s = m
    P, Q, R, S = n
    return (p * P + q * R, p * Q + q * S, r * P + s * R, r * Q + s * S)


@lru_cache(maxsize=1)
def _small_unimodular():
    out = []
    rng = range(-2, 3)
    for p, q, r, s in itertools.product(rng, repeat=4):
        if abs(p * s - q * r) == 1:
            out.append((p, q, r, s))
    return tuple(out)


def _canonical(f: QuarticForm):
    """(canonical coefficient tuple, integer matrix T with T . f == canonical form, seminorm)."""
    return _canonical_coeffs(f.coeffs) if f.is_integral else _canonical_uncached(f)


@lru_cache(maxsize=1 << 16)
def _canonical_coeffs(coeffs):
    return _canonical_uncached(QuarticForm(*coeffs))


def _canonical_uncached(f: QuarticForm):
    if not f.is_integral:
        raise DomainError("reduction needs an integral form")
    if 4 * f.I**3 - f.J**2 == 0:
        raise DomainError("zero discriminant")
    g, Qg, U = _gauss_reduce(f, covariant_quadratic(f))
    Qf = tuple(float(t) for t in Qg)
    rough = [(_q_seminorm_float(_q_act(Qf, *m)), m) for m in _small_unimodular()]
    cut = min(s for s, _ in rough) * (1 + 1e-9)
    with mpmath.workdps(_DPS):
        scored = [(_q_seminorm(_q_act(Qg, *m)), m) for s, m in rough if s <= cut]
        best = min(s for s, _ in scored)
        tol = best * mpmath.mpf(10) ** (-25)
        cands = [(_act_int(g, *m).coeffs, m) for s, m in scored if s - best <= tol]
    key, m = min(cands)
    return key, _mat_mul(m, U), float(best)


def canonical_key(f: QuarticForm) -> tuple:
    """Coefficient tuple identifying the GL2(Z)-class of an integral separable form.

    The class members minimising :func:`seminorm` form a finite set reached
    from any Gauss-reduced member by matrices with entries in [-2, 2]; the
    key is the lexicographically least coefficient tuple among them.
    """
    return _canonical(f)[0]


def reduce_Z(f: QuarticForm) -> QuarticForm:
    """Canonical reduced representative of the GL2(Z)-class of f (twisted action)."""
    if not f.is_integral:
        raise DomainError("reduce_Z needs an integral form")
    if f.poly_discriminant == 0:
        raise DomainError("zero discriminant")
    return QuarticForm(*canonical_key(f))


def equivalent_over_Z(f: QuarticForm, g: QuarticForm) -> bool:
    """Whether some det +-1 integer matrix carries f to g."""
    if f.I != g.I or f.J != g.J:
        return False
    return canonical_key(f) == canonical_key(g)


def find_Z_transform(f: QuarticForm, g: QuarticForm) -> Optional[Transform]:
    """An explicit unimodular U with act_twisted(U, f) == g, or None."""
    if f.I != g.I or f.J != g.J:
        return None
    kf, Tf, _ = _canonical(f)
    kg, Tg, _ = _canonical(g)
    if kf != kg:
        return None
    # Tf . f = Tg . g  =>  g = (Tg^-1 Tf) . f
    U = Transform(*Tg).inverse() @ Transform(*Tf)
    if act(U, f) != g:
        raise ConsistencyError("canonical transforms do not compose to an equivalence")
    return U


# ---------------------------------------------------------------------------
# rational equivalence through prime-index steps


def p_neighbors(f: QuarticForm, p: int) -> list[tuple[Transform, QuarticForm]]:
    """Integral forms g = M * f with M integral primitive of determinant p.

    The p + 1 index-p sublattices give M = [[p, 0], [k, 1]] (k mod p) and
    M = [[1, 0], [0, p]]. Any primitive M of determinant n factors through a
    chain of such steps up to GL2(Z) on either side, so rational
    equivalence of integral forms with equal invariants is the
    connectivity of this graph over primes dividing the discriminant.
    """
    a, b, c, d, e = f.coeffs
    out = []
    p2 = p * p
    if a % p2 == 0 and b % p == 0:
        out.append((Transform(1, 0, 0, p), QuarticForm(a // p2, b // p, c, d * p, e * p2)))
    for k in range(p):
        # need p^2 | f(k,1) and p | f_x(k,1)
        if ((((a * k + b) * k + c) * k + d) * k + e) % p2:
            continue
        if (((4 * a * k + 3 * b) * k + 2 * c) * k + d) % p:
            continue
        g = act_twisted(Transform(p, 0, k, 1), f)
        if g.is_integral:
            out.append((Transform(p, 0, k, 1), g))
    return out


def _step_primes(f: QuarticForm) -> list[int]:
    D = f.poly_discriminant
    if D == 0:
        raise DomainError("zero discriminant")
    return prime_factors(D)


def equivalent_over_Q(f: QuarticForm, g: QuarticForm, *, max_classes: int = 10_000):
    """Rational (PGL2(Q), twisted) equivalence of integral forms with equal invariants.

    Returns an explicit transform ``M`` with ``act_twisted(M, f) == g`` or
    ``None``. Forms with different invariants are never equivalent under the
    twisted action.
    """
    if not (f.is_integral and g.is_integral):
        raise DomainError("equivalent_over_Q expects integral forms")
    if f.I != g.I or f.J != g.J:
        return None
    target = canonical_key(g)
    primes = _step_primes(f)
    start = canonical_key(f)
    # BFS over Z-classes; each node carries (form, M) with form = M * f
    seen = {start: (f, Transform.identity())}
    frontier = [start]
    while frontier:
        if target in seen:
            break
        nxt = []
        for key in frontier:
            h, M = seen[key]
            for p in primes:
                for N, h2 in p_neighbors(h, p):
                    k2 = canonical_key(h2)
                    if k2 not in seen:
                        seen[k2] = (h2, N @ M)
                        nxt.append(k2)
        if len(seen) > max_classes:
            raise SearchCapExceeded("too many classes in rational-equivalence search")
        frontier = nxt
    if target not in seen:
        return None
    h, M = seen[target]
    U = find_Z_transform(h, g)
    if U is None:
        raise ConsistencyError("canonical keys agree but no unimodular transform found")
    W = U @ M
    if act_twisted(W, f) != g:
        raise ConsistencyError("composed transform does not carry f to g")
    return W


# ---------------------------------------------------------------------------
# enumeration with prescribed invariants


def _posdef_model(I, J):
    """Positive-definite lambda (x^4 + t x^2 y^2 + y^4) with invariants (I, J), 4I^3 > J^2."""
    with mpmath.workdps(_DPS):
        I_ = mpmath.mpf(I)
        target = mpmath.mpf(J) / I_**1.5

        def ratio(t):
            return (72 * t - 2 * t**3) / (12 + t * t) ** 1.5

        lo, hi = mpmath.mpf(-2), mpmath.mpf(2)
        for _ in range(200):
            mid = (lo + hi) / 2
            if ratio(mid) < target:
                lo = mid
            else:
                hi = mid
        t = (lo + hi) / 2
        lam = mpmath.sqrt(I_ / (12 + t * t))
        return [lam, 0, lam * t, 0, lam]


def _q_det_from_coeffs(coeffs) -> mpmath.mpf:
    with mpmath.workdps(_DPS):
        a, b, c, d, e = coeffs
        if a != 0:
            rts = mpmath.polyroots([a, b, c, d, e], maxsteps=200, extraprec=2 * _DPS)
            roots, k = [(r, mpmath.mpf(1)) for r in rts], a
        else:
            rts = mpmath.polyroots([b, c, d, e], maxsteps=200, extraprec=2 * _DPS)
            roots = [(r, mpmath.mpf(1)) for r in rts] + [(mpmath.mpf(-1), mpmath.mpf(0))]
            k = b
        A = B = C = mpmath.mpf(0)
        for j, (rj, sj) in enumerate(roots):
            w = abs(k)
            for i, (ri, si) in enumerate(roots):
                if i != j:
                    w *= abs(si * rj - ri * sj)
            A += abs(sj) ** 2 / w
            B -= 2 * mpmath.re(sj * mpmath.conj(rj)) / w
            C += abs(rj) ** 2 / w
        return A * C - B * B / 4


def q_determinant(f: QuarticForm) -> float:
    """det(Q_f); constant on each real orbit with fixed invariants."""
    with mpmath.workdps(_DPS):
        A, B, C = covariant_quadratic(f)
        return float(A * C - B * B / 4)


@dataclass(frozen=True)
class SearchBounds:
    I: int
    J: int
    size: float  # coefficient bound in the balanced frame
    amax: int  # |a| for reduced representatives with a != 0
    hmax: int  # |8ac - 3b^2|
    bmax0: int  # |b| when a = 0
    delta: float

    @property
    def candidates(self) -> int:
        """Number of (a, b, c) triples the box search visits."""
        n = 0
        for a in range(1, self.amax + 1):
            for b in range(0, 2 * a + 1):
                hi = (self.hmax + 3 * b * b) // (8 * a)
                lo = -((self.hmax - 3 * b * b) // (8 * a))
                n += 2 * max(0, hi - lo + 1)
        n += sum(3 * b for b in range(1, self.bmax0 + 1))
        return n


def search_bounds(I: int, J: int) -> SearchBounds:
    """Coefficient bounds covering one Gauss-reduced representative of every class."""
    I, J = int(I), int(J)
    D27 = 4 * I**3 - J * J
    if D27 == 0:
        raise DomainError(f"(I,J)=({I},{J}) has zero discriminant")
    with mpmath.workdps(_DPS):
        A = mpmath.mpf(-I) / 3
        B = mpmath.mpf(-J) / 27
        deltas = [_q_det_from_coeffs([mpmath.mpf(0), mpmath.mpf(1), mpmath.mpf(0), A, B])]
        if D27 > 0:
            deltas.append(_q_det_from_coeffs(_posdef_model(I, J)))
            deltas.append(_q_det_from_coeffs(_posdef_model(I, -J)))
        delta = max(deltas)
        D = abs(mpmath.mpf(D27) / 27)
        K = mpmath.sqrt(D) * delta / 4
        slack = 1 + mpmath.mpf(10) ** (-12)
        amax = int(mpmath.floor(4 * K / 3 * slack))
        hmax = int(mpmath.floor(44 * K * K / 3 * slack))
        bmax0 = int(mpmath.floor(2 * K / mpmath.sqrt(3) * slack))
        return SearchBounds(I, J, float(K), amax, hmax, bmax0, float(delta))


@dataclass
class EnumerationResult:
    I: int
    J: int
    classes: list  # canonical QuarticForm per GL2(Z)-class
    complete: bool
    candidates: int
    hits: int

    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)


def enumerate_integral_with_invariants(I: int, J: int, *, cap: int = DEFAULT_BOX_CAP) -> EnumerationResult:
    """All GL2(Z)-classes of integral quartics with invariants exactly (I, J).

    Completeness is relative to the box from :func:`search_bounds`; the box
    provably contains a Gauss-reduced representative of every class.
    Raises :class:`SearchCapExceeded` when the box has more than ``cap``
    (a, b, c) triples.
    """
    bounds = search_bounds(I, J)
    n = bounds.candidates
    if n > cap:
        raise SearchCapExceeded(
            f"(I,J)=({I},{J}) needs {n} candidates, cap is {cap}", needed=n, cap=cap
        )
    raw = kernels.quartic_box_search(bounds.I, bounds.J, bounds.amax, bounds.hmax, bounds.bmax0)
    classes = {}
    for coeffs in raw:
        f = QuarticForm(*coeffs)
        if f.I != I or f.J != J:
            raise ConsistencyError(f"kernel returned {coeffs} with wrong invariants")
        key = canonical_key(f)
        if key not in classes:
            classes[key] = QuarticForm(*key)
    forms = [classes[k] for k in sorted(classes)]
    return EnumerationResult(int(I), int(J), forms, True, n, len(raw))
