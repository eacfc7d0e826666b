import pytest
from hypothesis import given, settings, strategies as st

import oracles
from artinlab.errors import PrecondError
from artinlab.series import ExtOrder, RingSpec, TruncatedSeries, monomials_up_to
from artinlab.subspace import (
    IdealSpec,
    ModuleSpec,
    distance_order,
    member,
    span_ideal,
    span_m_power,
    span_module,
    subspace_intersect,
    subspace_sum,
)


def ring(n=2, char=0, D=4):
    return RingSpec(n, char, D)


def var(R, i):
    return TruncatedSeries.variable(R, i)


def test_span_ideal_monomial_counts():
    R = ring(D=2)
    U = span_ideal(IdealSpec.of(R, [var(R, 0)]))
    assert U.dim == 3  # T1, T1^2, T1*T2
    R1 = ring(D=1)
    assert span_ideal(IdealSpec.of(R1, [var(R1, 0), var(R1, 1)])).dim == 2


def test_span_ideal_rank_matches_dense_oracle():
    R = ring(D=5)
    f = var(R, 0) ** 2 - var(R, 1) ** 3
    I = IdealSpec.of(R, [f])
    U = span_ideal(I)
    rows = oracles.module_vectors(I.as_module())
    assert U.dim == oracles.dense_rank(rows, R)


def test_span_module_dims():
    R = ring(D=1)
    z = TruncatedSeries.zero(R)
    M = ModuleSpec(R, 2, ((var(R, 0), z), (z, var(R, 1))))
    assert span_module(M).dim == 2
    M2 = ModuleSpec(R, 2, ((var(R, 0), var(R, 0)),))
    assert span_module(M2).dim == 1
    M3 = ModuleSpec(R, 2, ((var(R, 0), z), (var(R, 1), z), (z, var(R, 0)), (z, var(R, 1))))
    assert span_module(M3).dim == 4  # all of m*A^2 at D=1


def test_span_m_power():
    R = ring(D=3)
    full = span_m_power(R, 0)
    assert full.dim == len(monomials_up_to(2, 3))
    assert span_m_power(R, R.trunc + 1).dim == 0
    assert span_m_power(R, 2).dim == 7  # degree-2 and degree-3 monomials
    with pytest.raises(PrecondError):
        span_m_power(R, 9)


def test_sum_intersect_dimension_formula_examples():
    R = ring(D=3)
    I = span_ideal(IdealSpec.of(R, [var(R, 0)]))
    V = span_m_power(R, 2)
    s = subspace_sum(I, V)
    x = subspace_intersect(I, V)
    assert s.dim + x.dim == I.dim + V.dim
    assert subspace_sum(I, I) == I
    assert subspace_intersect(I, I) == I


def test_intersection_is_scaled_ideal():
    # (T1) cap m^2 at D=3 equals T1*m
    R = ring(D=3)
    I = IdealSpec.of(R, [var(R, 0)])
    inter = subspace_intersect(span_ideal(I), span_m_power(R, 2))
    scaled = span_ideal(I, min_mult_degree=1)
    assert inter == scaled
    assert inter.dim == 5


def test_canonical_form_generator_invariance():
    # two generating sets of the same truncated ideal produce identical bases
    R = ring(D=5)
    t1, t2 = var(R, 0), var(R, 1)
    g1, g2 = t1**2 - t2**3, t1 * t2
    I = IdealSpec.of(R, [g1, g2])
    J = IdealSpec.of(R, [g1 + t2 * g2, g2, g1.scale(3)])
    assert span_ideal(I).canonical() == span_ideal(J).canonical()
    assert span_ideal(I) == span_ideal(J)


def test_member_and_distance_order():
    R = RingSpec(2, 0, 6)
    t1, t2 = var(R, 0), var(R, 1)
    I = IdealSpec.of(R, [t1**2 - t2**3])
    U = span_ideal(I)
    assert member((t1**2 - t2**3) * t2, U)
    assert not member(t1, U)
    assert distance_order((t1**2 - t2**3).scale(2), U) == ExtOrder.at_least(7)
    assert distance_order(t1, U) == ExtOrder.of(1)
    assert distance_order(t1**2, U) == ExtOrder.of(3)


def test_distance_order_matches_naive_sweep():
    R = RingSpec(2, 0, 6)
    t1, t2 = var(R, 0), var(R, 1)
    I = IdealSpec.of(R, [t1**2 - t2**3])
    U = span_ideal(I)
    for x in [t1, t2, t1**2, t1 * t2, t2**2, t1**2 + t2**2, t1**3, (t1**2 - t2**3) * t1]:
        got = distance_order(x, U)
        want = oracles.naive_nu(I, x)
        if got.exact:
            assert got.value == want
        else:
            assert want == R.trunc + 1


def test_distance_order_monotone_under_shrinking():
    R = RingSpec(2, 0, 6)
    t1, t2 = var(R, 0), var(R, 1)
    big = span_ideal(IdealSpec.of(R, [t1, t2**2]))
    small = span_ideal(IdealSpec.of(R, [t1 * t2, t2**2]))
    for x in [t1, t2, t1 + t2, t1**2 + t2**3]:
        assert distance_order(x, big) >= distance_order(x, small)


def test_zero_ideal_distance_is_plain_order():
    R = RingSpec(2, 0, 5)
    t1, t2 = var(R, 0), var(R, 1)
    U = span_ideal(IdealSpec.of(R, []))
    for x in [t1, t1 * t2 + t2**3, TruncatedSeries.constant(R, 2)]:
        assert distance_order(x, U) == x.order()


def test_vector_membership_arity_mismatch():
    R = ring()
    U = span_m_power(R, 1, arity=2)
    with pytest.raises(PrecondError):
        member(var(R, 0), U)


def test_echelon_form_is_canonical_reduced():
    # pivot columns strictly increase, carry coefficient 1, and vanish in
    # every other row
    R = ring(D=4)
    U = span_ideal(IdealSpec.of(R, [var(R, 0) + var(R, 1) ** 2, var(R, 0) * var(R, 1)]))
    assert U.pivots == sorted(set(U.pivots))
    for pos, (p, row) in enumerate(zip(U.pivots, U.rows)):
        assert row[p] == 1
        assert min(row) == p
        for other_pos, other in enumerate(U.rows):
            if other_pos != pos:
                assert p not in other


def test_intersection_equals_dense_kernel_oracle():
    R = RingSpec(2, 0, 4)
    t1, t2 = var(R, 0), var(R, 1)
    pairs = [
        ([t1], [t2]),
        ([t1, t2**2], [t1 * t2]),
        ([t1**2 - t2**3], [t1 * t2, t2**2]),
        ([t1 + t2], [t1 - t2]),
    ]
    for gens_u, gens_v in pairs:
        Iu, Iv = IdealSpec.of(R, gens_u), IdealSpec.of(R, gens_v)
        inter = subspace_intersect(span_ideal(Iu), span_ideal(Iv))
        rows_u = oracles.module_vectors(Iu.as_module())
        rows_v = oracles.module_vectors(Iv.as_module())
        dense = oracles.naive_intersection_basis(rows_u, rows_v, R)
        assert inter.dim == oracles.dense_rank(dense, R) if dense else inter.dim == 0
        # mutual containment of the two computed intersections
        for vec in dense:
            fat = {idx: c for idx, c in enumerate(vec) if c != 0}
            assert inter.contains_vec(fat)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_dimension_formula_random(data):
    R = RingSpec(2, 7, 3)
    monos = list(monomials_up_to(2, 3))
    coeffs = st.integers(min_value=0, max_value=6)
    mk = st.dictionaries(st.sampled_from(monos), coeffs, max_size=4).map(
        lambda d: TruncatedSeries(R, d)
    )
    gens_u = [s for s in data.draw(st.lists(mk, min_size=1, max_size=2)) if not s.is_zero]
    gens_v = [s for s in data.draw(st.lists(mk, min_size=1, max_size=2)) if not s.is_zero]
    U = span_ideal(IdealSpec.of(R, gens_u))
    V = span_ideal(IdealSpec.of(R, gens_v))
    s = subspace_sum(U, V)
    x = subspace_intersect(U, V)
    assert s.dim + x.dim == U.dim + V.dim
    for row in x.rows:
        assert U.contains_vec(row) and V.contains_vec(row)
    assert s.contains(U) and s.contains(V)
