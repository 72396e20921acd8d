"""Height-ordered censuses of E_AB and the arithmetic that accompanies them."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import mpmath

from .curves import count_minimal, enumerate_minimal, height_box, singular_locus_count, torsion_order
from .errors import ConfigurationError, DomainError
from .quartics import DEFAULT_BOX_CAP, enumerate_integral_with_invariants

__all__ = [
    "CensusStats",
    "zeta10",
    "volume_constant",
    "volume_prediction",
    "run_census",
    "minimality_density",
    "torsion_fraction",
    "p_square_disc_count",
    "quartic_height_pairs",
    "rank_bound_arithmetic",
    "proportion_bounds",
    "TIMESERIES_HEADER",
]

TIMESERIES_HEADER = "X,n_curves,avg_sel2,pred,ratio"


def zeta10(terms: int = 2000, dps: int = 40):
    """(value, error bound) for zeta(10) from a partial sum plus the integral tail.

    sum_{n > N} n^-10 lies between N+1 and N integral bounds:
    [ (N+1)^-9 / 9, N^-9 / 9 ]; the midpoint is returned.
    """
    with mpmath.workdps(dps):
        s = mpmath.fsum(mpmath.mpf(n) ** -10 for n in range(1, terms + 1))
        lo = mpmath.mpf(terms + 1) ** -9 / 9
        hi = mpmath.mpf(terms) ** -9 / 9
        return s + (lo + hi) / 2, (hi - lo) / 2


def volume_constant(dps: int = 40):
    """c = 2^(4/3) 3^(-3/2) / zeta(10)."""
    with mpmath.workdps(dps):
        z, _ = zeta10(dps=dps)
        return mpmath.mpf(2) ** (mpmath.mpf(4) / 3) * mpmath.mpf(3) ** (-mpmath.mpf(3) / 2) / z


def volume_prediction(X) -> tuple[float, float]:
    """(c X^(5/6), 2c X^(5/6)): predicted curve count and predicted sum of (#Sel_2 - 1)."""
    if X < 1:
        raise DomainError("X must be >= 1")
    with mpmath.workdps(30):
        c = volume_constant(30)
        base = c * mpmath.mpf(X) ** (mpmath.mpf(5) / 6)
        return float(base), float(2 * base)


@dataclass
class CensusStats:
    X: int
    n_curves: int
    sum_sel2: Optional[int]
    avg_sel2: Optional[Fraction]
    avg_sel2_minus_1: Optional[Fraction]
    dim_histogram: dict
    minimal_density: Fraction
    torsion_nontrivial_fraction: Optional[Fraction]
    volume_pred: float
    selmer_volume_pred: float
    partial: bool = False
    unverified: list = field(default_factory=list)
    congruence: tuple = ()

    @property
    def ratio(self) -> float:
        return self.n_curves / self.volume_pred if self.volume_pred else float("nan")

    @property
    def distance_from_3(self) -> Optional[float]:
        return None if self.avg_sel2 is None else abs(float(self.avg_sel2) - 3)

    def timeseries_row(self) -> str:
        avg = "" if self.avg_sel2 is None else f"{float(self.avg_sel2):.6f}"
        return f"{self.X},{self.n_curves},{avg},{self.volume_pred:.6f},{self.ratio:.6f}"

    def to_json(self) -> dict:
        def q(x):
            return None if x is None else f"{x.numerator}/{x.denominator}"

        return {
            "X": self.X,
            "congruence": list(self.congruence),
            "n_curves": self.n_curves,
            "sum_sel2": self.sum_sel2,
            "avg_sel2": q(self.avg_sel2),
            "avg_sel2_float": None if self.avg_sel2 is None else float(self.avg_sel2),
            "avg_sel2_minus_1": q(self.avg_sel2_minus_1),
            "distance_from_3": self.distance_from_3,
            "dim_histogram": {str(k): v for k, v in sorted(self.dim_histogram.items())},
            "minimal_density": q(self.minimal_density),
            "torsion_nontrivial_fraction": q(self.torsion_nontrivial_fraction),
            "volume_pred": self.volume_pred,
            "selmer_volume_pred": self.selmer_volume_pred,
            "ratio": self.ratio,
            "partial": self.partial,
            "unverified": [[a, b] for a, b in self.unverified],
            "asymptotic_only": ["volume_pred", "selmer_volume_pred"],
        }


def _selmer_task(args):
    from .selmer import sel2_size

    key, cap = args
    r = sel2_size(key, cap=cap)
    return key, r.size, r.dim, r.verified, torsion_order(key) > 1


def _count_torsion(key):
    return torsion_order(key) > 1


def _pool_map(func, items, jobs: int):
    # ordered results regardless of worker count
    if jobs <= 1 or len(items) < 2:
        return [func(x) for x in items]
    from multiprocessing import get_context

    with get_context("fork").Pool(jobs) as pool:
        return pool.map(func, items, chunksize=max(1, len(items) // (8 * jobs)))


def run_census(
    X: int,
    congruence_filter: Iterable = None,
    *,
    count_only: bool = False,
    jobs: int = 1,
    cap: int = DEFAULT_BOX_CAP,
    with_torsion: bool = True,
) -> CensusStats:
    """Aggregate over the minimal curves of height < X.

    With ``count_only`` only the curve count, the minimal density and the
    predictions are produced. Otherwise every curve goes through
    :func:`selmer.sel2_size`; a curve whose result is unverified marks the
    census partial and is listed.
    """
    if X < 1:
        raise DomainError("X must be >= 1")
    if jobs < 1:
        raise ConfigurationError("jobs must be >= 1")
    pred, spred = volume_prediction(X)
    density = minimality_density(X)
    conds = tuple(str(c) for c in (congruence_filter or ()))
    if count_only:
        if congruence_filter:
            n = sum(1 for _ in enumerate_minimal(X, congruence_filter))
        else:
            n, _ = count_minimal(X)
        tors = None
        if with_torsion:
            keys = list(enumerate_minimal(X, congruence_filter))
            flags = _pool_map(_count_torsion, keys, jobs)
            tors = Fraction(sum(flags), len(keys)) if keys else Fraction(0)
        return CensusStats(X, n, None, None, None, {}, density, tors, pred, spred, congruence=conds)

    keys = list(enumerate_minimal(X, congruence_filter))
    results = _pool_map(_selmer_task, [(k, cap) for k in keys], jobs)
    total = 0
    hist = Counter()
    unverified = []
    ntors = 0
    for key, size, dim, verified, tors in results:
        total += size
        hist[dim] += 1
        ntors += tors
        if not verified:
            unverified.append((key.A, key.B))
    n = len(results)
    avg = Fraction(total, n) if n else None
    return CensusStats(
        X, n, total, avg, None if avg is None else avg - 1, dict(hist), density,
        Fraction(ntors, n) if n else Fraction(0), pred, spred, bool(unverified), unverified, conds,
    )


def minimality_density(X: int) -> Fraction:
    """#minimal / #all among nonsingular integer pairs of height < X."""
    if X < 1:
        raise DomainError("X must be >= 1")
    n_min, n_all = count_minimal(X)
    return Fraction(n_min, n_all) if n_all else Fraction(1)


def torsion_fraction(X: int, *, jobs: int = 1) -> Fraction:
    """Fraction of minimal curves of height < X with a nontrivial rational torsion point."""
    keys = list(enumerate_minimal(X))
    if not keys:
        return Fraction(0)
    return Fraction(sum(_pool_map(_count_torsion, keys, jobs)), len(keys))


def quartic_height_pairs(X: int):
    """Invariant pairs (I, J) of integral quartics with height H(-I/3, -J/27) < X and nonzero discriminant.

    Only pairs with 27 | 4I^3 - J^2 are returned (the discriminant of an
    integral form is an integer).
    """
    out = []
    imax = 0
    while 4 * (imax + 1) ** 3 < 27 * X:
        imax += 1
    jmax = math.isqrt(max(27 * X - 1, 0))
    while jmax * jmax >= 27 * X:
        jmax -= 1
    for I in range(-imax, imax + 1):
        for J in range(-jmax, jmax + 1):
            D27 = 4 * I**3 - J * J
            if D27 == 0 or D27 % 27:
                continue
            out.append((I, J))
    return out


def p_square_disc_count(p: int, X: int, *, cap: int = DEFAULT_BOX_CAP) -> int:
    """GL2(Z)-classes of integral quartics with height < X, Delta != 0 and p^2 | Delta.

    The height of a form is H(A, B) of its normalised invariants
    A = -I/3, B = -J/27, that is max(4|I|^3/27, J^2/27).
    """
    if X < 1:
        raise DomainError("X must be >= 1")
    total = 0
    for I, J in quartic_height_pairs(X):
        D = (4 * I**3 - J * J) // 27
        if D % (p * p):
            continue
        total += len(enumerate_integral_with_invariants(I, J, cap=cap))
    return total


def rank_bound_arithmetic(sel3_avg_bound) -> Fraction:
    """Average rank bound (s + 3) / 6 from an average #Sel_3 bound s.

    For every integer n >= 0, 6n - 3 <= 3^n (equality at n = 1, 2). With
    r <= dim Sel_3 this gives 6 avg(r) - 3 <= avg(#Sel_3) <= s.
    """
    s = Fraction(sel3_avg_bound)
    if s < 1:
        raise DomainError("an average of #Sel_3 is at least 1")
    return (s + 3) / 6


def proportion_bounds(sel3_avg_bound) -> tuple[Fraction, Fraction]:
    """Lower bounds on the proportions p0 (dim Sel_3 = 0) and p1 (dim 1).

    Half the family has even dimension, so the average is at least
    p0 + 3 p1 + 9 (1/2 - p0) + 27 (1/2 - p1) with 0 <= p0, p1 <= 1/2.
    Each bound comes from pushing the other proportion to 1/2.
    """
    s = Fraction(sel3_avg_bound)
    if s < 2:
        raise DomainError(f"bound {s} is below the least achievable average 2")
    p0 = max(Fraction(0), (6 - s) / 8)
    p1 = max(Fraction(0), (14 - s) / 24)
    return p0, p1
