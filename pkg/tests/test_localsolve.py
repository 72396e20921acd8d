import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import residue_solvable, solutions_mod
from strategies import quartics, unimodular
from twoselmer.errors import DomainError
from twoselmer.localsolve import (
    INFINITY,
    is_locally_solvable,
    relevant_primes,
    solvable_over_Qp,
    solvable_over_R,
    verify_certificate,
)
from twoselmer.quartics import QuarticForm, act_twisted, has_rational_linear_factor


def Q(*c):
    return QuarticForm(*c)


def test_real_place_examples():
    c = solvable_over_R(Q(1, 0, 0, 0, 1))
    assert c.solvable and c.witness == (1, 0, 1.0) and c.place == INFINITY
    assert not solvable_over_R(Q(-1, 0, 0, 0, -1)).solvable
    c = solvable_over_R(Q(-1, 0, 0, 0, 1))
    assert c.solvable and c.witness[:2] == (0, 1)


def test_real_place_with_rational_roots_on_the_boundary():
    # -5x^4 + 6x^2 - 1 vanishes at +-1 and +-1/sqrt 5 and is positive in between
    c = solvable_over_R(Q(-5, 0, 6, 0, -1))
    assert c.solvable and verify_certificate(Q(-5, 0, 6, 0, -1), c)


@given(quartics())
@settings(max_examples=300)
def test_real_place_against_sampling(f):
    import numpy as np

    roots = np.roots([float(t) for t in f.coeffs]) if f.a else []
    real = [r.real for r in roots if abs(r.imag) < 1e-9]
    expected = f.a > 0 or f.e > 0 or f.a == 0 or bool(real)
    assert solvable_over_R(f).solvable is expected


def test_padic_examples():
    assert solvable_over_Qp(Q(1, 0, 0, 0, 1), 5).solvable
    # all coefficients 5: f(1, 1) = 25 is a square, so solvable at 5
    c = solvable_over_Qp(Q(5, 5, 5, 5, 5), 5)
    assert c.solvable and verify_certificate(Q(5, 5, 5, 5, 5), c)
    assert residue_solvable((5, 5, 5, 5, 5), 5) is True


@pytest.mark.parametrize("coeffs,p", [((-1, 0, 0, 0, -1), 2), ((3, 0, 0, 0, 3), 3), ((2, 0, 0, 0, 10), 5),
                                      ((-1, 0, 0, 0, 3), 3), ((5, 0, 0, 0, 10), 5)])
def test_padic_unsolvable_examples(coeffs, p):
    assert not solvable_over_Qp(Q(*coeffs), p).solvable
    assert residue_solvable(coeffs, p) is False


@pytest.mark.parametrize("p", [2, 3])
def test_3x4_plus_4y4_against_residue_counts(p):
    f = Q(3, 0, 0, 0, 4)
    expected = residue_solvable(f.coeffs, p)
    assert solvable_over_Qp(f, p).solvable is expected
    if expected:
        assert solutions_mod(f.coeffs, p, 3)


def test_relevant_primes_examples():
    assert relevant_primes(Q(1, 0, 0, 0, 1)) == [2]
    assert relevant_primes(Q(0, 1, 0, -1, 0)) == [2]
    assert relevant_primes(Q(1, 0, 0, 0, 3)) == [2, 3]
    with pytest.raises(DomainError):
        relevant_primes(Q(1, 2, 1, 0, 0))


def test_is_locally_solvable_examples():
    ok, certs = is_locally_solvable(Q(0, 1, 0, -16, 0))
    assert ok and all(verify_certificate(Q(0, 1, 0, -16, 0), c) for c in certs)
    ok, certs = is_locally_solvable(Q(-1, 0, 0, 0, -1))
    assert not ok and certs[-1].place == INFINITY


@given(quartics(lo=-20, hi=20))
@settings(max_examples=200)
def test_certificates_verify(f):
    _, certs = is_locally_solvable(f, stop_early=False)
    for c in certs:
        assert verify_certificate(f, c)
        doc = c.to_json()
        assert set(doc) == {"place", "solvable", "witness", "precision"}


@given(quartics(lo=-20, hi=20))
def test_linear_factor_implies_solvable(f):
    if has_rational_linear_factor(f):
        assert is_locally_solvable(f)[0]


@given(quartics(lo=-8, hi=8), unimodular())
@settings(max_examples=150)
def test_solvability_invariant_under_unimodular_twist(f, U):
    g = act_twisted(U, f)
    for p in relevant_primes(f):
        assert solvable_over_Qp(f, p).solvable == solvable_over_Qp(g, p).solvable
    assert solvable_over_R(f).solvable == solvable_over_R(g).solvable


def _good_prime_pairs(n, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        f = Q(*(rng.randint(-30, 30) for _ in range(5)))
        if not any(f.coeffs) or f.poly_discriminant == 0:
            continue
        D = f.poly_discriminant
        p = rng.choice([q for q in sympy.primerange(3, 200) if D % q])
        out.append((f, p))
    return out


def test_good_primes_are_always_solvable():
    for f, p in _good_prime_pairs(100, 7):
        assert solvable_over_Qp(f, p).solvable
        assert residue_solvable(f.primitive_integral().coeffs, p) is True


def test_agreement_with_residue_oracle_and_both_outcomes_occur():
    rng = random.Random(11)
    outcomes = set()
    n = 0
    while n < 300:
        f = Q(*(rng.randint(-6, 6) for _ in range(5)))
        if not any(f.coeffs) or f.poly_discriminant == 0:
            continue
        n += 1
        g = f.primitive_integral()
        for p in (2, 3, 5):
            got = solvable_over_Qp(f, p).solvable
            assert residue_solvable(g.coeffs, p) is got
            outcomes.add(got)
    assert outcomes == {True, False}


def test_zero_discriminant_rejected():
    with pytest.raises(DomainError):
        solvable_over_Qp(Q(1, 2, 1, 0, 0), 3)
