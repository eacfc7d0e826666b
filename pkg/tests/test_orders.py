from fractions import Fraction

import pytest

import oracles
from artinlab.errors import BudgetError, PrecondError
from artinlab.orders import (
    NuOracle,
    icl_envelope,
    icl_scan,
    nu,
    nu_bar_estimate,
    scan_candidates,
    valuation_check,
)
from artinlab.series import ExtOrder, RingSpec
from artinlab.subspace import IdealSpec
from artinlab.parsing import parse_poly


def cusp_ring(D=8):
    R = RingSpec(2, 0, D)
    return R, IdealSpec.of(R, [parse_poly("T1^2 - T2^3", R)])


def test_nu_values_cusp():
    R, I = cusp_ring()
    t1 = parse_poly("T1", R)
    assert nu(I, t1) == ExtOrder.of(1)
    assert nu(I, t1**2) == ExtOrder.of(3)
    member = parse_poly("(T1^2 - T2^3)*(1 + T1)", R)
    assert nu(I, member) == ExtOrder.at_least(R.trunc + 1)


def test_nu_zero_ideal_is_order():
    R = RingSpec(2, 0, 5)
    I = IdealSpec.of(R, [])
    for text in ["T1", "T1*T2 + T2^3", "3"]:
        x = parse_poly(text, R)
        assert nu(I, x) == x.order()


def test_nu_against_naive_membership_sweep():
    R, I = cusp_ring(D=6)
    for text in ["T1", "T2", "T1^2", "T1*T2", "T1^2 + T2^2", "T1^3"]:
        x = parse_poly(text, R)
        got = nu(I, x)
        want = oracles.naive_nu(I, x)
        assert (got.value if got.exact else R.trunc + 1) == want


def test_nu_superadditive():
    R, I = cusp_ring(D=8)
    oracle = NuOracle(I)
    elems = [parse_poly(t, R) for t in ["T1", "T2", "T1 + T2^2", "T1^2", "T1*T2"]]
    for g in elems:
        for h in elems:
            ng, nh = oracle.nu(g), oracle.nu(h)
            if ng.exact and nh.exact and ng.value + nh.value <= R.trunc:
                assert oracle.nu(g * h) >= ExtOrder.of(ng.value + nh.value)


def test_nu_generator_invariance():
    R = RingSpec(2, 0, 6)
    f1 = parse_poly("T1^2 - T2^3", R)
    f2 = parse_poly("T1*T2^2", R)
    I = IdealSpec.of(R, [f1, f2])
    J = IdealSpec.of(R, [f1 + parse_poly("T2", R) * f2, f2.scale(5), f1])
    a, b = NuOracle(I), NuOracle(J)
    for text in ["T1", "T2", "T1^2", "T1*T2", "T2^2", "T1^2+T2^2"]:
        x = parse_poly(text, R)
        assert a.nu(x) == b.nu(x)


def test_nu_bar_cusp_three_halves():
    R = RingSpec(2, 0, 12)
    I = IdealSpec.of(R, [parse_poly("T1^2 - T2^3", R)])
    rep = nu_bar_estimate(I, parse_poly("T1", R), 4)
    assert rep.estimate == Fraction(3, 2)
    assert [(n, v.value) for n, v in rep.samples] == [(1, 1), (2, 3), (3, 4), (4, 6)]
    assert rep.flags == []
    assert Fraction(rep.nu_x.value) <= rep.estimate  # lower inequality


def test_nu_bar_zero_ideal_is_one():
    R = RingSpec(2, 0, 8)
    I = IdealSpec.of(R, [])
    for n_max in (1, 2, 4):
        assert nu_bar_estimate(I, parse_poly("T1", R), n_max).estimate == 1


def test_nu_bar_monotone_in_n_max():
    R = RingSpec(2, 0, 12)
    I = IdealSpec.of(R, [parse_poly("T1^2 - T2^3", R)])
    x = parse_poly("T1", R)
    prev = Fraction(0)
    for n_max in range(1, 5):
        est = nu_bar_estimate(I, x, n_max).estimate
        assert est >= prev
        prev = est


def test_nu_bar_flags_truncation():
    R = RingSpec(2, 0, 4)
    I = IdealSpec.of(R, [parse_poly("T1^2 - T2^3", R)])
    rep = nu_bar_estimate(I, parse_poly("T1", R), 4)
    assert any("skipped" in f or "truncation" in f for f in rep.flags)


def test_icl_scan_cusp_b1():
    R = RingSpec(2, 0, 8)
    I = IdealSpec.of(R, [parse_poly("T1^2 + T2^3", R)])
    rep = icl_scan(I, 3, a=Fraction(1), seed=0, count=30)
    assert rep.b_min == 1
    assert rep.violations == []
    pair = rep.attaining_pairs[0]
    assert pair[0].to_str() == "T1" and pair[1].to_str() == "T1"
    assert (pair[2].value, pair[3].value, pair[4].value) == (1, 1, 3)


def test_icl_scan_valuation_case_b0():
    R = RingSpec(3, 0, 8)
    I = IdealSpec.of(R, [parse_poly("T1^2 + T2^2 + T3^2", R)])
    rep = icl_scan(I, 3, a=Fraction(1), seed=0, count=25)
    assert rep.b_min == 0
    assert rep.violations == []


def test_icl_scan_zero_divisor_violation():
    R = RingSpec(2, 0, 8)
    I = IdealSpec.of(R, [parse_poly("T1*T2", R)])
    rep = icl_scan(I, 3, a=Fraction(1), seed=0, count=25)
    assert rep.b_min is None and rep.unbounded_at_truncation
    pairs = {(g.to_str(), h.to_str()) for g, h, *_ in rep.violations}
    assert ("T1", "T2") in pairs


def test_icl_b_min_monotone_in_scan_degree():
    R = RingSpec(2, 2, 8)
    I = IdealSpec.of(R, [parse_poly("T1^2 + T2^3", R)])
    b1 = icl_scan(I, 1, a=Fraction(1), mode="exhaustive", budget=10**6).b_min
    b2 = icl_scan(I, 2, a=Fraction(1), mode="exhaustive", budget=10**6).b_min
    assert b1 <= b2


def test_icl_attaining_pairs_satisfy_reported_equation():
    R = RingSpec(2, 0, 8)
    I = IdealSpec.of(R, [parse_poly("T1^2 + T2^3", R)])
    for a in (Fraction(1), Fraction(3, 2)):
        rep = icl_scan(I, 3, a=a, seed=1, count=20)
        for g, h, ng, nh, ngh in rep.attaining_pairs:
            assert Fraction(ngh.value) == a * (ng.value + nh.value) + rep.b_min


def test_icl_envelope_slopes():
    R = RingSpec(2, 0, 8)
    I = IdealSpec.of(R, [parse_poly("T1^2 + T2^3", R)])
    reps = icl_envelope(I, 2, seed=0, count=10)
    assert [r.a for r in reps] == [Fraction(1), Fraction(3, 2), Fraction(2)]
    # larger slope can only shrink the offset
    finite = [r.b_min for r in reps if r.b_min is not None]
    assert finite == sorted(finite, reverse=True)


def test_icl_scan_preconditions():
    R = RingSpec(2, 0, 4)
    I = IdealSpec.of(R, [parse_poly("T1", R)])
    with pytest.raises(PrecondError):
        icl_scan(I, 3, a=Fraction(1))  # 2*3 > 4
    with pytest.raises(PrecondError):
        icl_scan(I, 2, a=Fraction(1, 2))
    with pytest.raises(PrecondError):
        icl_scan(I, 2, a=Fraction(1), mode="exhaustive")  # needs finite field
    with pytest.raises(BudgetError):
        icl_scan(IdealSpec.of(RingSpec(2, 5, 4), [parse_poly("T1", RingSpec(2, 5, 4))]), 2, mode="exhaustive", budget=10)


def test_valuation_check_cases():
    R3 = RingSpec(3, 0, 8)
    sphere = IdealSpec.of(R3, [parse_poly("T1^2 + T2^2 + T3^2", R3)])
    assert valuation_check(sphere, 3, seed=0, count=20).is_valuation

    R2 = RingSpec(2, 0, 8)
    cusp = IdealSpec.of(R2, [parse_poly("T1^2 - T2^3", R2)])
    rep = valuation_check(cusp, 3, seed=0, count=20)
    assert not rep.is_valuation
    g, h, ng, nh, ngh = rep.counterexample
    assert ngh.value != ng.value + nh.value

    zero = IdealSpec.of(R2, [])
    assert valuation_check(zero, 3, seed=0, count=20).is_valuation


def test_scan_candidates_deterministic():
    R = RingSpec(2, 0, 8)
    a = scan_candidates(R, 2, "random", count=10, seed=3)
    b = scan_candidates(R, 2, "random", count=10, seed=3)
    assert [s.to_str() for s in a] == [s.to_str() for s in b]
    c = scan_candidates(R, 2, "random", count=10, seed=4)
    assert [s.to_str() for s in a] != [s.to_str() for s in c]
