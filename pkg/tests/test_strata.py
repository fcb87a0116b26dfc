"""Rank-only classification and chart-equation classification, checked
against each other and against the kernel route."""

import random
from fractions import Fraction

import pytest

from ratherm import (
    FieldConfig,
    HermiteData,
    Poly,
    ShapeMismatch,
    b1_closed_form_check,
    classify_by_rank,
    rational_taylor,
    solve_kernel,
    stratum_equations,
)
from ratherm.strata import rank_verdict_matches_kernel

RAT = FieldConfig.rationals()
GF13 = FieldConfig.prime(13)

SHAPES = [
    ((2, 1), 2),
    ((3, 1), 2),
    ((2, 2), 3),
    ((5,), 3),
    ((1, 1, 1), 2),
    ((4, 2), 4),
    ((2, 2, 1), 3),
]

DEGENERATE = [
    (HermiteData((0,), (3,), ((0, 0, 1),), 1, RAT), 2, (0,)),
    (HermiteData((0,), (4,), ((0, 0, 0, 1),), 1, RAT), 3, (0,)),
    (HermiteData((0, 1), (2, 2), ((0, 0), (0, 1)), 1, RAT), 3, (1,)),
]


def random_data(rng, shape, k, field=RAT):
    pool = range(0, field.p) if field.is_prime_field else range(-6, 7)
    u = rng.sample(pool, len(shape))
    v = tuple(
        tuple(field.from_int(rng.randint(-6, 6)) for _ in range(ni)) for ni in shape
    )
    return HermiteData(u, shape, v, k, field)


def test_golden_rank_report(golden):
    rep = classify_by_rank(golden)
    assert rep.defect == 1
    assert rep.chart == "both"
    assert rep.unattainable
    assert rep.witnesses == (1,)
    assert set(rep.diagonal_minor_values) == {1, 2, 3}
    assert rep.diagonal_minor_values[2] == Fraction(1)
    assert rep.diagonal_minor_values[3] == Fraction(1)


def test_golden_equation_report(golden):
    assert stratum_equations(golden) == classify_by_rank(golden)


def test_report_json(golden):
    doc = classify_by_rank(golden).to_json_dict(golden)
    assert doc["defect"] == 1
    assert doc["chart"] == "both"
    assert doc["unattainable"] is True
    assert doc["witnesses"] == [1]
    assert doc["diagonal_minors"]["2"] == "1"
    assert all(isinstance(t, str) for t in doc["diagonal_minors"])


def test_report_json_prime_field():
    d = random_data(random.Random(3), (2, 1), 2, GF13)
    doc = classify_by_rank(d).to_json_dict(d)
    for val in doc["diagonal_minors"].values():
        assert set(val) == {"residue", "p"} and val["p"] == 13


def test_diagonal_window_bounds():
    rng = random.Random(5)
    for shape, k in SHAPES:
        d = random_data(rng, shape, k)
        rep = classify_by_rank(d)
        lo, hi = max(1, d.k - d.m), min(d.n, d.k + d.m + 1)
        assert sorted(rep.diagonal_minor_values) == list(range(lo, hi + 1))


def test_classifiers_agree_on_random_data():
    rng = random.Random(71)
    for shape, k in SHAPES:
        for _ in range(4):
            d = random_data(rng, shape, k)
            by_rank = classify_by_rank(d)
            by_eq = stratum_equations(d)
            assert by_rank == by_eq
            _, verdict = solve_kernel(d)
            assert by_rank.unattainable != verdict.solvable
            if not verdict.solvable:
                assert by_rank.defect == verdict.stratum_j
                assert by_rank.witnesses == verdict.witness_nodes
            assert rank_verdict_matches_kernel(d)


def test_classifiers_agree_on_solvable_data():
    rng = random.Random(73)
    for _ in range(6):
        A = Poly([rng.randint(-4, 4), rng.randint(-4, 4), 1], RAT)
        B = Poly([rng.randint(5, 9), 1], RAT)
        u = (0, 1, 2)
        v = tuple(rational_taylor(A, B, Fraction(ui), ni) for ui, ni in zip(u, (2, 1, 1)))
        d = HermiteData(u, (2, 1, 1), v, 3, RAT)
        rep = classify_by_rank(d)
        assert not rep.unattainable
        assert rep.witnesses == ()
        assert rep == stratum_equations(d)


@pytest.mark.parametrize("d,defect,wits", DEGENERATE, ids=["n3", "n4", "split"])
def test_classifiers_cover_zero_numerator_regime(d, defect, wits):
    rep = classify_by_rank(d)
    assert rep.defect == defect
    assert rep.chart == "upper"
    assert rep.unattainable
    assert rep.witnesses == wits
    assert rep == stratum_equations(d)
    assert rank_verdict_matches_kernel(d)


def test_zero_data_classified_solvable():
    d = HermiteData((0, 3), (2, 2), ((0, 0), (0, 0)), 2, RAT)
    rep = classify_by_rank(d)
    assert rep.defect == d.n - d.k + 1
    assert not rep.unattainable
    assert rep.witnesses == ()
    assert rep == stratum_equations(d)


def test_b1_closed_form_cells():
    # same constants, nonzero slope: unattainable
    d1 = HermiteData((0, 1), (2, 1), ((3, 5), (3,)), 2, RAT)
    # zero slope, different constants: unattainable
    d2 = HermiteData((0, 1), (2, 1), ((3, 0), (4,)), 2, RAT)
    # same constants, zero slope: the constant function
    d3 = HermiteData((0, 1), (2, 1), ((3, 0), (3,)), 2, RAT)
    # generic: solvable
    d4 = HermiteData((0, 1), (2, 1), ((3, 5), (4,)), 2, RAT)
    for d in (d1, d2, d3, d4):
        assert b1_closed_form_check(d)
    assert classify_by_rank(d1).unattainable
    assert classify_by_rank(d2).unattainable
    assert not classify_by_rank(d3).unattainable
    assert not classify_by_rank(d4).unattainable


def test_b1_closed_form_fuzz():
    rng = random.Random(79)
    for _ in range(40):
        d = random_data(rng, (2, 1), 2)
        assert b1_closed_form_check(d)


def test_b1_closed_form_shape_guard():
    wrong_shape = HermiteData((0, 1), (2, 2), ((0, 0), (0, 0)), 2, RAT)
    with pytest.raises(ShapeMismatch):
        b1_closed_form_check(wrong_shape)
    wrong_k = HermiteData((0, 1), (2, 1), ((0, 0), (0,)), 1, RAT)
    with pytest.raises(ShapeMismatch):
        b1_closed_form_check(wrong_k)
