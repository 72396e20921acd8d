"""Acceptance criteria 1-10. Each prints one PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v``.
"""
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest
import sympy

from oracles import brute_class_count, residue_solvable
from twoselmer.census import (
    minimality_density,
    p_square_disc_count,
    proportion_bounds,
    rank_bound_arithmetic,
    run_census,
    torsion_fraction,
    volume_prediction,
    zeta10,
)
from twoselmer.curves import count_minimal, enumerate_minimal
from twoselmer.localsolve import solvable_over_Qp
from twoselmer.quartics import (
    QuarticForm,
    act,
    act_twisted,
    canonical_key,
    equivalent_over_Q,
    equivalent_over_Z,
    has_rational_linear_factor,
    invariants,
)
from twoselmer.selmer import sel2_size, sel2_two_torsion_oracle, two_torsion_dim


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(n, title):
        t0 = time.perf_counter()
        info = {}
        try:
            yield info
        except BaseException:
            with capsys.disabled():
                print(f"\n[acceptance {n:2d}] FAIL  {title}  {info.get('detail', '')}")
            raise
        dt = time.perf_counter() - t0
        with capsys.disabled():
            print(f"\n[acceptance {n:2d}] PASS  {title}  ({dt:.1f}s) {info.get('detail', '')}")

    return run


def test_01_curve_count_against_volume(criterion):
    with criterion(1, "curve count at X=10^6 within 5% of c X^(5/6)") as info:
        assert run_census(100, count_only=True, with_torsion=False).n_curves == 14
        t0 = time.perf_counter()
        n, _ = count_minimal(10**6)
        dt = time.perf_counter() - t0
        pred, _ = volume_prediction(10**6)
        info["detail"] = f"n={n} pred={pred:.1f} ratio={n / pred:.5f} t={dt:.2f}s"
        assert abs(n / pred - 1) <= 0.05
        assert dt < 60


def test_02_minimality_density(criterion):
    with criterion(2, "minimal density at X=10^8 within 1e-3 of 1/zeta(10)") as info:
        t0 = time.perf_counter()
        d = minimality_density(10**8)
        dt = time.perf_counter() - t0
        z, _ = zeta10()
        gap = float(d) - 1 / float(z)
        info["detail"] = f"density={float(d):.7f} gap={gap:.2e} t={dt:.2f}s"
        assert abs(gap) <= 1e-3
        assert dt < 600


def test_03_oracle_equivalence(criterion):
    with criterion(3, "sel2_size == two-torsion descent for every full-2-torsion curve, H < 10^4") as info:
        keys = [k for k in enumerate_minimal(10**4) if two_torsion_dim(k) == 2]
        bad = []
        for k in keys:
            res = sel2_size(k)
            if not res.verified or res.size != sel2_two_torsion_oracle(k):
                bad.append((k.A, k.B))
        info["detail"] = f"{len(keys)} curves, {len(bad)} disagreements {bad}"
        assert keys and not bad


def test_04_structural_invariants(criterion):
    with criterion(4, "power of 2 and a unique identity class for every curve, H < 10^4") as info:
        t0 = time.perf_counter()
        keys = list(enumerate_minimal(10**4))
        total = 0
        bad = []
        for k in keys:
            res = sel2_size(k)
            total += res.size
            linear = [f for f in res.classes if has_rational_linear_factor(f)]
            ok = (
                res.verified
                and res.size & (res.size - 1) == 0
                and res.size == len(res.classes)
                and len(linear) <= 1
                and res.identity_witness in res.classes
            )
            if not ok:
                bad.append((k.A, k.B))
        avg = Fraction(total, len(keys))
        dt = time.perf_counter() - t0
        info["detail"] = (f"{len(keys)} curves, avg_sel2={float(avg):.4f} "
                          f"|avg-3|={abs(float(avg) - 3):.4f} t={dt:.0f}s bad={bad[:5]}")
        assert not bad
        assert dt < 7200


def test_05_covariance_suite(criterion):
    with criterion(5, "1000 random (g, f): A, B scale by det^4, det^6; twisted action preserves them") as info:
        rng = random.Random(20240501)
        t0 = time.perf_counter()
        n = 0
        while n < 1000:
            f = QuarticForm(*(rng.randint(-50, 50) for _ in range(5)))
            g = [[rng.randint(-9, 9) for _ in range(2)] for _ in range(2)]
            det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
            if det == 0:
                continue
            n += 1
            inv, plain, tw = invariants(f), invariants(act(g, f)), invariants(act_twisted(g, f))
            assert plain.A_norm == det**4 * inv.A_norm and plain.B_norm == det**6 * inv.B_norm
            assert tw == inv
        dt = time.perf_counter() - t0
        info["detail"] = f"t={dt:.2f}s"
        assert dt < 10


def test_06_equivalence_example(criterion):
    with criterion(6, "p^2x^4+px^3y+x^2y^2+xy^3+y^4 vs x^4+x^3y+x^2y^2+pxy^3+p^2y^4: Q-equivalent, Z-inequivalent") as info:
        t0 = time.perf_counter()
        rows = []
        for p in (3, 5, 7):
            f = QuarticForm(p * p, p, 1, 1, 1)
            g = QuarticForm(1, 1, 1, p, p * p)
            rows.append((p, bool(equivalent_over_Q(f, g)), equivalent_over_Z(f, g)))
        dt = time.perf_counter() - t0
        info["detail"] = f"(p, Q-equiv, Z-equiv) = {rows} t={dt:.2f}s"
        assert all(q and not z for _, q, z in rows)
        assert dt < 1


def test_07_local_solvability_sanity(criterion):
    with criterion(7, "good primes always solvable; residue oracle agrees at p = 2, 3, 5") as info:
        rng = random.Random(7)
        good = 0
        while good < 100:
            f = QuarticForm(*(rng.randint(-30, 30) for _ in range(5)))
            if not any(f.coeffs) or f.poly_discriminant == 0:
                continue
            D = f.poly_discriminant
            p = rng.choice([q for q in sympy.primerange(3, 200) if D % q])
            assert solvable_over_Qp(f, p).solvable, (f, p)
            good += 1
        agree = 0
        forms = 0
        while forms < 100:
            f = QuarticForm(*(rng.randint(-6, 6) for _ in range(5)))
            if not any(f.coeffs) or f.poly_discriminant == 0:
                continue
            forms += 1
            for p in (2, 3, 5):
                expected = residue_solvable(f.primitive_integral().coeffs, p)
                assert solvable_over_Qp(f, p).solvable is expected, (f, p)
                agree += 1
        info["detail"] = f"{good} good-prime checks, {agree} oracle comparisons"


def test_08_corollary_arithmetic(criterion):
    with criterion(8, "rank_bound_arithmetic(4) = 7/6, proportion_bounds(4) = (1/4, 5/12)"):
        assert rank_bound_arithmetic(4) == Fraction(7, 6)
        assert proportion_bounds(4) == (Fraction(1, 4), Fraction(5, 12))


def test_09_uniformity_trend(criterion):
    with criterion(9, "p^2 | Delta class counts non-increasing in p and equal to brute force") as info:
        X = 300
        counts = [p_square_disc_count(p, X) for p in (3, 5, 7, 11)]
        brute = [len({canonical_key(QuarticForm(*c)) for c in brute_class_count(p, X, 10)}) for p in (3, 5, 7, 11)]
        info["detail"] = f"X={X} counts={counts} brute={brute}"
        assert all(a >= b for a, b in zip(counts, counts[1:]))
        assert counts == brute


def test_10_torsion_rarity(criterion):
    with criterion(10, "nontrivial-torsion fraction decreasing over X = 10^3, 10^4, 10^5") as info:
        fr = [torsion_fraction(X) for X in (10**3, 10**4, 10**5)]
        info["detail"] = "fractions=" + ", ".join(f"{float(x):.4f}" for x in fr)
        assert all(b <= a * Fraction(11, 10) for a, b in zip(fr, fr[1:]))
