import json
from fractions import Fraction

import pytest

from twoselmer.curves import CurveKey, enumerate_minimal, height
from twoselmer.errors import ConsistencyError, DomainError
from twoselmer.localsolve import is_locally_solvable, verify_certificate
from twoselmer.quartics import QuarticForm, equivalent_over_Q, has_rational_linear_factor, invariants
from twoselmer.selmer import (
    SelmerResult,
    has_nontorsion_point,
    naive_points,
    rank_interval,
    sel2_size,
    sel2_two_torsion_oracle,
    two_torsion_dim,
)

# every full-2-torsion curve with H < 2*10^5; the first four have a point of infinite order
FULL_TWO_TORSION = [(-36, 0, 8), (-31, -30, 8), (-28, -48, 8), (-25, 0, 8), (-21, -20, 8),
                    (-31, 30, 4), (-28, 48, 4), (-21, 20, 4), (-19, -30, 4), (-19, 30, 4),
                    (-13, -12, 4), (-13, 12, 4), (-9, 0, 4), (-7, -6, 4), (-7, 6, 4),
                    (-4, 0, 4), (-1, 0, 4)]


def test_congruent_number_curve():
    res = sel2_size((-1, 0))
    assert res.size == 4 and res.dim == 2 and res.verified
    assert rank_interval(res, two_torsion_dim((-1, 0))) == (0, 0)


def test_identity_form_is_always_present():
    res = sel2_size((1, 1))
    assert has_rational_linear_factor(res.identity_witness)
    assert invariants(res.identity_witness) == invariants(QuarticForm(0, 1, 0, 16, 64))


def test_point_search_lower_bound_for_2_3():
    # (3, 6) lies on y^2 = x^3 + 2x + 3 and is not torsion; (-1, 0) is 2-torsion
    assert (Fraction(3), Fraction(6)) in naive_points((2, 3), xbound=10, dbound=1)
    assert has_nontorsion_point((2, 3), xbound=10, dbound=1)
    res = sel2_size((2, 3))
    assert res.dim >= 1 + two_torsion_dim((2, 3))
    assert res.size == 2**res.dim and res.size >= 4


@pytest.mark.parametrize("A,B,expected", FULL_TWO_TORSION)
def test_oracle_agrees_with_quartic_pipeline(A, B, expected):
    assert sel2_two_torsion_oracle((A, B)) == expected
    res = sel2_size((A, B), cap=10**8)
    assert res.verified and res.size == expected


def test_full_two_torsion_list_is_complete():
    found = [(k.A, k.B) for k in enumerate_minimal(2 * 10**5) if two_torsion_dim(k) == 2]
    assert sorted(found) == sorted((a, b) for a, b, _ in FULL_TWO_TORSION)


def test_oracle_rejects_curves_without_full_two_torsion():
    with pytest.raises(DomainError):
        sel2_two_torsion_oracle((2, 3))
    with pytest.raises(DomainError):
        sel2_two_torsion_oracle((0, 0))


def test_singular_curve_rejected():
    with pytest.raises(DomainError):
        sel2_size((-3, 2))


def test_structure_on_small_curves():
    for k in enumerate_minimal(2000):
        res = sel2_size(k)
        assert res.verified
        assert res.size == 2**res.dim == len(res.classes)
        assert sum(has_rational_linear_factor(f) for f in res.classes) <= 1
        assert res.identity_witness in res.classes
        assert rank_interval(res, two_torsion_dim(k))[1] >= 0


def test_classes_are_solvable_and_pairwise_inequivalent():
    res = sel2_size((-36, 0))
    for f in res.classes:
        ok, certs = is_locally_solvable(f, stop_early=False)
        assert ok and all(verify_certificate(f, c) for c in certs)
    for i, f in enumerate(res.classes):
        for g in res.classes[i + 1:]:
            assert not equivalent_over_Q(f, g)


def _samples(n):
    keys = sorted(enumerate_minimal(1000), key=lambda k: (height(k), k))
    return keys[:n]


@pytest.mark.parametrize("key", _samples(20), ids=str)
def test_invariant_under_rescaling(key):
    base = sel2_size(key)
    assert base.verified
    for q in (2, 3):
        res = sel2_size(key.rescaled(q), cap=10**8)
        assert res.verified and res.size == base.size


def test_cap_exceeded_is_unverified_lower_bound():
    res = sel2_size(CurveKey(-1, 0).rescaled(3))
    assert not res.verified and res.size == 1 and "cap" in res.note


@pytest.mark.parametrize("dim,t,upper", [(2, 2, 0), (1, 0, 1), (3, 1, 2)])
def test_rank_interval_arithmetic(dim, t, upper):
    res = SelmerResult(CurveKey(1, 1), 2**dim, dim, (), None)
    assert rank_interval(res, t) == (0, upper)


def test_rank_interval_errors():
    res = SelmerResult(CurveKey(1, 1), 2, 1, (), None)
    with pytest.raises(ConsistencyError):
        rank_interval(res, 2)
    with pytest.raises(DomainError):
        rank_interval(res, 3)


def test_json_shape():
    res = sel2_size((-1, 0)).with_oracle(True)
    doc = json.loads(json.dumps(res.to_json()))
    assert doc["A"] == -1 and doc["B"] == 0 and doc["size"] == 4 and doc["dim"] == 2
    assert doc["oracle_agreement"] is True and len(doc["classes"]) == 4
    assert all(len(c) == 5 for c in doc["classes"])
