"""2-Selmer groups through PGL2(Q)-classes of locally solvable quartics.

Also holds a complete 2-descent for curves with full rational 2-torsion,
written without any quartic machinery so the two can be compared.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arith import prime_factors, valuation
from .curves import CurveKey, require_nonsingular, torsion_points, two_torsion_roots
from .errors import ConsistencyError, DomainError, SearchCapExceeded
from .localsolve import is_locally_solvable
from .quartics import (
    DEFAULT_BOX_CAP,
    QuarticForm,
    canonical_key,
    enumerate_integral_with_invariants,
    has_rational_linear_factor,
    p_neighbors,
)

__all__ = [
    "SelmerResult",
    "sel2_size",
    "sel2_two_torsion_oracle",
    "rank_interval",
    "two_torsion_dim",
    "naive_points",
]


@dataclass(frozen=True)
class SelmerResult:
    key: CurveKey
    size: int
    dim: int
    classes: tuple  # one QuarticForm per PGL2(Q)-class
    identity_witness: Optional[QuarticForm]
    oracle_agreement: Optional[bool] = None
    verified: bool = True
    z_classes: int = 0  # locally solvable GL2(Z)-classes before merging
    note: str = ""

    def with_oracle(self, agreement: bool) -> "SelmerResult":
        return SelmerResult(
            self.key, self.size, self.dim, self.classes, self.identity_witness,
            agreement, self.verified, self.z_classes, self.note,
        )

    def to_json(self) -> dict:
        return {
            "A": self.key.A,
            "B": self.key.B,
            "size": self.size,
            "dim": self.dim,
            "classes": [list(f.coeffs) for f in self.classes],
            "oracle_agreement": self.oracle_agreement,
            "verified": self.verified,
        }


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # smaller key wins so the representative is deterministic
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx

    def groups(self):
        out = {}
        for x in sorted(self.parent):
            out.setdefault(self.find(x), []).append(x)
        return [out[r] for r in sorted(out)]


def sel2_size(key, *, cap: int = DEFAULT_BOX_CAP) -> SelmerResult:
    """#Sel_2(E_AB) from locally solvable integral quartics with invariants (-48A, -1728B).

    Z-classes are merged into Q-classes along prime-index steps
    (:func:`quartics.p_neighbors`) for every prime dividing the
    discriminant. A neighbour missing from the enumeration means the
    search box was too small, and the result is marked unverified. If the
    box itself exceeds ``cap`` the result is unverified with size 1
    (the identity class alone, a lower bound).
    """
    k = require_nonsingular(key)
    A2, B2 = 16 * k.A, 64 * k.B
    I, J = -3 * A2, -27 * B2
    ident = QuarticForm(0, 1, 0, A2, B2)
    try:
        enum = enumerate_integral_with_invariants(I, J, cap=cap)
    except SearchCapExceeded as exc:
        return SelmerResult(k, 1, 0, (ident,), ident, None, False, 0, f"search cap: {exc}")

    all_keys = {f.coeffs for f in enum.classes}
    forms = {}
    for f in enum.classes:
        ok, _ = is_locally_solvable(f)
        if ok:
            forms[f.coeffs] = f
    verified = enum.complete
    note = ""
    if canonical_key(ident) not in forms:
        raise ConsistencyError(f"identity form missing for {k}")

    primes = prime_factors(ident.poly_discriminant)
    uf = _UnionFind(forms)
    for kf, f in forms.items():
        for p in primes:
            for _, g in p_neighbors(f, p):
                kg = canonical_key(g)
                if kg in forms:
                    uf.union(kf, kg)
                elif kg in all_keys:
                    raise ConsistencyError(f"neighbour {kg} of solvable {kf} is not solvable")
                else:
                    verified = False
                    note = f"neighbour {kg} outside enumeration"

    groups = uf.groups()
    reps = []
    identity = []
    for grp in groups:
        members = [forms[x] for x in grp]
        reps.append(members[0])
        if any(has_rational_linear_factor(m) for m in members):
            identity.append(members[0])
    size = len(groups)
    if size & (size - 1):
        raise ConsistencyError(f"{k}: {size} classes is not a power of 2")
    if len(identity) != 1:
        raise ConsistencyError(f"{k}: {len(identity)} classes with a rational linear factor")
    return SelmerResult(
        k, size, size.bit_length() - 1, tuple(reps), identity[0], None, verified, len(forms), note
    )


# ---------------------------------------------------------------------------
# full 2-torsion descent


def _sq_class(x: Fraction, place):
    """Label of x in Q_v^* / Q_v^*2."""
    if place == math.inf:
        return 1 if x > 0 else -1
    p = place
    v = valuation(x, p)
    u = x / Fraction(p) ** v
    n = u.numerator * u.denominator
    if p == 2:
        return (v % 2, n % 8)
    return (v % 2, pow(n % p, (p - 1) // 2, p))


def _sq_mul(s, t, place):
    if place == math.inf:
        return s * t
    p = place
    if p == 2:
        return ((s[0] + t[0]) % 2, (s[1] * t[1]) % 8)
    return ((s[0] + t[0]) % 2, (s[1] * t[1]) % p)


def _is_local_square(x: Fraction, place) -> bool:
    if place == math.inf:
        return x > 0
    c = _sq_class(x, place)
    return c[0] == 0 and c[1] == 1


def _span(gens, place):
    one = 1 if place == math.inf else (0, 1)
    group = {(one, one)}
    for g in gens:
        if g in group:
            continue
        group |= {(_sq_mul(h[0], g[0], place), _sq_mul(h[1], g[1], place)) for h in group}
    return group


def _kummer(x: Fraction, roots, place):
    e1, e2, e3 = roots
    if x == e1:
        return (_sq_class(Fraction((e1 - e2) * (e1 - e3)), place), _sq_class(Fraction(e1 - e2), place))
    if x == e2:
        return (_sq_class(Fraction(e2 - e1), place), _sq_class(Fraction((e2 - e1) * (e2 - e3)), place))
    return (_sq_class(x - e1, place), _sq_class(x - e2, place))


def _local_image(roots, place, max_level: int = 14):
    """Image of E(Q_v) under x -> (x - e1, x - e2), as a set of class pairs."""
    e1, e2, e3 = roots
    if place == math.inf:
        target = 2
    elif place == 2:
        target = 8
    else:
        target = 4
    gens = [_kummer(Fraction(e), roots, place) for e in (e1, e2, e3)]
    group = _span(gens, place)
    if len(group) >= target:
        return group
    if place == math.inf:
        xs = [Fraction(max(roots) + 1)]
    else:
        p = place
        for m in range(1, max_level):
            xs = [Fraction(t, p ** (2 * j)) for j in range(0, 2) for t in range(-p**m, p**m + 1)]
            for x in xs:
                if x in (e1, e2, e3):
                    continue
                y2 = (x - e1) * (x - e2) * (x - e3)
                if _is_local_square(y2, p):
                    g = _kummer(x, roots, p)
                    if g not in group:
                        group = _span(list(group) + [g], p)
                        if len(group) >= target:
                            return group
            if len(group) >= target:
                return group
        raise ConsistencyError(f"local image at {place} stuck at {len(group)} < {target}")
    for x in xs:
        group = _span(list(group) + [_kummer(x, roots, place)], place)
    if len(group) != target:
        raise ConsistencyError(f"real image has {len(group)} elements")
    return group


def sel2_two_torsion_oracle(key) -> int:
    """#Sel_2 for y^2 = (x - e1)(x - e2)(x - e3) with integer e_i, by complete 2-descent.

    A pair (d1, d2) of squarefree integers supported on -1 and the primes
    dividing 2(e1 - e2)(e1 - e3)(e2 - e3) is a Selmer element exactly when
    its image lies in the Kummer image of E(Q_v) at every bad place v and
    at infinity. Local images come from explicit local points, stopping
    when the image reaches its known order (4 at odd p, 8 at 2, 2 at
    infinity).
    """
    k = require_nonsingular(key)
    roots = sorted(two_torsion_roots(k))
    if len(roots) != 3:
        raise DomainError(f"{k} does not have full rational 2-torsion")
    e1, e2, e3 = roots
    S = sorted(set(prime_factors(2 * (e1 - e2) * (e1 - e3) * (e2 - e3))))
    places = [math.inf] + S
    images = {v: _local_image(roots, v) for v in places}
    basis = [-1] + S
    ds = []
    for bits in itertools.product((0, 1), repeat=len(basis)):
        d = 1
        for b, q in zip(bits, basis):
            if b:
                d *= q
        ds.append(d)
    cls = {v: {d: _sq_class(Fraction(d), v) for d in ds} for v in places}
    count = 0
    for d1 in ds:
        for d2 in ds:
            if all((cls[v][d1], cls[v][d2]) in images[v] for v in places):
                count += 1
    if count & (count - 1) or count < 4:
        raise ConsistencyError(f"oracle produced {count} for {k}")
    return count


# ---------------------------------------------------------------------------


def two_torsion_dim(key) -> int:
    n = len(two_torsion_roots(key))
    return {0: 0, 1: 1, 3: 2}[n]


def rank_interval(res: SelmerResult, torsion_2_dim: int) -> tuple[int, int]:
    """(0, dim Sel_2 - dim E[2](Q)); the rank itself is not computed."""
    if torsion_2_dim not in (0, 1, 2):
        raise DomainError("torsion_2_dim must be 0, 1 or 2")
    upper = res.dim - torsion_2_dim
    if upper < 0:
        raise ConsistencyError(f"dim {res.dim} below 2-torsion dim {torsion_2_dim}")
    return 0, upper


def naive_points(key, xbound: int = 200, dbound: int = 6) -> list[tuple[Fraction, Fraction]]:
    """Rational points with x = n/d^2, |n| <= xbound * d^2, d <= dbound."""
    from math import isqrt

    k = require_nonsingular(key)
    out = []
    for d in range(1, dbound + 1):
        d2 = d * d
        for n in range(-xbound * d2, xbound * d2 + 1):
            if math.gcd(n, d) != 1:
                continue
            # y^2 d^6 = n^3 + A n d^4 + B d^6
            r = n**3 + k.A * n * d2 * d2 + k.B * d2**3
            if r < 0:
                continue
            s = isqrt(r)
            if s * s == r:
                x = Fraction(n, d2)
                y = Fraction(s, d2 * d)
                out.append((x, y))
    return out


def has_nontorsion_point(key, **kw) -> bool:
    tors = {(Fraction(x), Fraction(y)) for x, y in torsion_points(key)}
    return any((x, y) not in tors for x, y in naive_points(key, **kw))
