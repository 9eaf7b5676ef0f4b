from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from structcon.algebra import (
    AlgebraElement, AlgebraKind, BasisElement, SpanBasis, bracket, bracket_via_matrices, canonical_basis,
    contains_sl, decompose, dimension, lie_closure, span_contains, span_insert, to_matrix,
)
from structcon.exceptions import EmptyGenerators, KindMismatch, MembershipError

from conftest import element

SO3 = AlgebraKind('so', 3)
GL2 = AlgebraKind('gl', 2)
SU3 = AlgebraKind('su', 3)
nonzero = st.integers(min_value=-9, max_value=9).filter(bool)


def elements(kind, max_terms=4):
    coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.lists(st.tuples(st.sampled_from(canonical_basis(kind)), coeffs), max_size=max_terms).map(
        lambda terms: AlgebraElement(kind, terms))


@pytest.mark.parametrize('family,n,expected', [
    ('so', 6, 15), ('gl', 4, 16), ('su', 5, 24), ('su', 2, 3), ('so', 2, 1),
])
def test_dimension_matches_canonical_basis(family, n, expected):
    kind = AlgebraKind(family, n)
    assert dimension(kind) == expected
    assert len(canonical_basis(kind)) == expected
    assert len(set(canonical_basis(kind))) == expected


def test_canonical_order_for_su3():
    assert [str(b) for b in canonical_basis(SU3)] == [
        'B_12', 'B_13', 'B_23', 'C_12', 'C_13', 'C_23', 'D_12', 'D_13']


def test_kind_rejects_tiny_n():
    with pytest.raises(ValueError):
        AlgebraKind('so', 1)


def test_compact_families():
    assert AlgebraKind('so', 3).compact
    assert AlgebraKind('su', 3).compact
    assert not AlgebraKind('gl', 3).compact


@pytest.mark.parametrize('args', [('B', 2, 1), ('C', 1, 1), ('X', 1, 2), ('E', 0, 1)])
def test_basis_element_rejects_bad_indices(args):
    with pytest.raises(ValueError):
        BasisElement(*args)


def test_d_is_canonicalized():
    kind = AlgebraKind('su', 4)
    d24 = AlgebraElement.basis(kind, 'D', 2, 4)
    assert d24 == element(kind, 'D_14 - D_12')
    assert d24.support == {BasisElement('D', 1, 4), BasisElement('D', 1, 2)}


def test_element_rejects_foreign_basis():
    with pytest.raises(MembershipError):
        AlgebraElement.basis(SO3, 'C', 1, 2)
    with pytest.raises(MembershipError):
        AlgebraElement.basis(SO3, 'B', 1, 4)


def test_parse_and_str():
    kind = AlgebraKind('so', 6)
    e = element(kind, '3*B_12 + 2*B(1,4) - 1/2*B_25')
    assert e.coefficient(BasisElement('B', 1, 2)) == 3
    assert e.coefficient(BasisElement('B', 2, 5)) == Fraction(-1, 2)
    assert str(e) == '3*B_12 + 2*B_14 - 1/2*B_25'
    assert AlgebraElement.parse(kind, str(e)) == e
    assert str(-AlgebraElement.basis(kind, 'B', 1, 2)) == '-B_12'


@pytest.mark.parametrize('text', ['', '3*', 'B_12 B_13', 'Q_12'])
def test_parse_rejects_garbage(text):
    with pytest.raises(ValueError):
        AlgebraElement.parse(SO3, text)


def test_arithmetic_drops_zeros():
    b12 = AlgebraElement.basis(SO3, 'B', 1, 2)
    assert (b12 - b12).is_zero()
    assert (b12 * 0).is_zero()
    assert 2 * b12 == b12 + b12


def test_arithmetic_rejects_mixed_kinds():
    with pytest.raises(KindMismatch):
        AlgebraElement.basis(SO3, 'B', 1, 2) + AlgebraElement.basis(AlgebraKind('so', 4), 'B', 1, 2)


def test_known_brackets():
    su5 = AlgebraKind('su', 5)
    so6 = AlgebraKind('so', 6)
    assert bracket(element(su5, 'B_12'), element(su5, 'C_12')) == element(su5, '2*D_12')
    assert bracket(element(so6, 'B_15'), element(so6, 'B_12')) == element(so6, 'B_25')
    assert bracket(element(GL2, 'E_12'), element(GL2, 'E_21')) == element(GL2, 'E_11 - E_22')
    assert bracket(element(su5, 'D_12'), element(su5, 'D_35')).is_zero()


def test_bracket_kind_mismatch():
    with pytest.raises(KindMismatch):
        bracket(AlgebraElement.basis(SO3, 'B', 1, 2), AlgebraElement.basis(GL2, 'E', 1, 2))
    with pytest.raises(KindMismatch):
        bracket_via_matrices(AlgebraElement.basis(SO3, 'B', 1, 2), AlgebraElement.basis(GL2, 'E', 1, 2))


@pytest.mark.parametrize('family,n', [('so', 6), ('gl', 4), ('su', 5)])
def test_structure_constants_match_matrices(family, n):
    kind = AlgebraKind(family, n)
    basis = [AlgebraElement(kind, [(b, 1)]) for b in canonical_basis(kind)]
    for x, y in product(basis, repeat=2):
        assert bracket(x, y) == bracket_via_matrices(x, y), (x, y)


def test_bracket_table_with_raw_diagonal_pairs():
    # D_ij for every i < j, not only the canonical D_1k
    for n in (3, 4, 5):
        kind = AlgebraKind('su', n)
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        basis = [AlgebraElement.basis(kind, tag, i, j) for tag in 'BCD' for i, j in pairs]
        for x, y in product(basis, repeat=2):
            assert bracket(x, y) == bracket_via_matrices(x, y), (x, y)


@settings(max_examples=60, deadline=None)
@given(elements(SU3), elements(SU3), elements(SU3))
def test_jacobi_identity(x, y, z):
    total = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert total.is_zero()


@settings(max_examples=60, deadline=None)
@given(elements(AlgebraKind('gl', 3)), elements(AlgebraKind('gl', 3)))
def test_antisymmetry(x, y):
    assert bracket(x, y) == -bracket(y, x)
    assert bracket(x, x).is_zero()


@settings(max_examples=40, deadline=None)
@given(elements(SU3), elements(SU3), nonzero)
def test_bilinear(x, y, scalar):
    assert bracket(x * scalar, y) == bracket(x, y) * scalar
    assert bracket(x + y, y) == bracket(x, y)


@settings(max_examples=40, deadline=None)
@given(elements(SU3, max_terms=3), elements(SU3, max_terms=3))
def test_random_brackets_match_matrices(x, y):
    assert bracket(x, y) == bracket_via_matrices(x, y)


@pytest.mark.parametrize('kind,text', [
    (AlgebraKind('so', 4), '3*B_12 - 1/2*B_34'),
    (AlgebraKind('gl', 3), 'E_11 + 2*E_23 - E_32'),
    (AlgebraKind('su', 4), 'B_12 + 3*C_24 - D_34'),
])
def test_decompose_inverts_to_matrix(kind, text):
    e = element(kind, text)
    assert decompose(to_matrix(e), kind) == e


def test_to_matrix_of_su_generators():
    kind = AlgebraKind('su', 2)
    assert to_matrix(element(kind, 'C_12')) == sympy.Matrix([[0, sympy.I], [sympy.I, 0]])
    assert to_matrix(element(kind, 'D_12')) == sympy.Matrix([[sympy.I, 0], [0, -sympy.I]])


@pytest.mark.parametrize('kind,matrix', [
    (AlgebraKind('so', 2), [[0, 1], [1, 0]]),
    (AlgebraKind('so', 2), [[0, sympy.I], [-sympy.I, 0]]),
    (AlgebraKind('gl', 2), [[sympy.I, 0], [0, 0]]),
    (AlgebraKind('su', 2), [[sympy.I, 0], [0, sympy.I]]),
    (AlgebraKind('su', 2), [[0, 1], [1, 0]]),
    (AlgebraKind('gl', 2), [[sympy.sqrt(2), 0], [0, 0]]),
    (AlgebraKind('gl', 3), [[1, 0], [0, 1]]),
])
def test_decompose_rejects_outsiders(kind, matrix):
    with pytest.raises(MembershipError):
        decompose(sympy.Matrix(matrix), kind)


def test_span_insert_is_persistent_and_reduced():
    kind = AlgebraKind('so', 4)
    empty = SpanBasis.empty(kind)
    one, inserted = span_insert(empty, element(kind, '2*B_13 + B_24'))
    assert inserted and one.rank == 1 and empty.rank == 0
    two, inserted = span_insert(one, element(kind, 'B_12 + B_13'))
    assert inserted and two.rank == 2
    same, inserted = span_insert(two, element(kind, 'B_12 - B_13 - B_24'))
    assert not inserted and same is two
    assert list(two.pivots) == sorted(two.pivots)
    for row, pivot in zip(two.rows, two.pivots):
        assert row.coefficient(canonical_basis(kind)[pivot]) == 1
    assert span_contains(two, element(kind, 'B_12 + 3*B_13 + B_24'))
    assert not span_contains(two, element(kind, 'B_34'))


def test_span_kind_mismatch():
    with pytest.raises(KindMismatch):
        span_insert(SpanBasis.empty(SO3), AlgebraElement.basis(GL2, 'E', 1, 1))


def test_closure_needs_generators():
    with pytest.raises(EmptyGenerators):
        lie_closure([])


def test_closure_of_small_sets():
    assert lie_closure([element(SO3, 'B_12'), element(SO3, 'B_23')]).dimension == 3
    so4 = AlgebraKind('so', 4)
    closure = lie_closure([element(so4, 'B_12'), element(so4, 'B_34')])
    assert closure.dimension == 2
    assert closure.steps == 1
    su3 = lie_closure([element(SU3, 'B_12'), element(SU3, 'C_12')])
    assert su3.dimension == 3


@pytest.mark.parametrize('family,n', [('so', 6), ('gl', 4), ('su', 5)])
def test_full_basis_closes_at_once(family, n):
    kind = AlgebraKind(family, n)
    closure = lie_closure([AlgebraElement(kind, [(b, 1)]) for b in canonical_basis(kind)])
    assert closure.dimension == kind.dimension
    assert closure.basis.is_full()
    assert closure.steps == 0


def test_closure_sweeps_are_bounded():
    closure = lie_closure([element(SO3, 'B_12'), element(SO3, 'B_23')])
    assert closure.steps == 1
    so6 = AlgebraKind('so', 6)
    chain = lie_closure([element(so6, 'B_{}{}'.format(i, i + 1)) for i in range(1, 6)])
    assert chain.dimension == 15
    assert chain.steps <= so6.dimension


@settings(max_examples=30, deadline=None)
@given(st.lists(elements(SU3), min_size=1, max_size=3), elements(SU3))
def test_closure_grows_with_generators(generators, extra):
    smaller = lie_closure(generators)
    larger = lie_closure(generators + [extra])
    assert smaller.dimension <= larger.dimension
    assert larger.steps <= SU3.dimension
    assert all(span_contains(larger.basis, g) for g in generators)


def test_closure_rejects_mixed_kinds():
    with pytest.raises(KindMismatch):
        lie_closure([element(SO3, 'B_12'), element(GL2, 'E_12')])


def test_example2_closure_is_so6(so6):
    drift = element(so6, '3*B_12 + 2*B_14 + 3*B_25')
    controls = [element(so6, t) for t in ('B_12', 'B_23', 'B_13', 'B_45', 'B_56', 'B_46')]
    assert lie_closure([drift] + controls).dimension == 15


def test_example3_closures(gl4):
    drift = element(gl4, '3*E_13 + E_42') + 2 * element(gl4, 'E_12 - E_13') + element(gl4, 'E_33 - E_44 + 2*E_31')
    controls = [element(gl4, t) for t in ('E_12', 'E_21', 'E_34', 'E_43')]
    full = lie_closure([drift, element(gl4, 'E_11')] + controls)
    assert full.dimension == 16 and full.basis.is_full()
    sl = lie_closure([drift] + controls)
    assert sl.dimension == 15
    assert contains_sl(sl.basis)


def test_example5_control_sets_generate_su5(su5):
    for texts in (('B_12', 'C_13', 'B_14', 'B_15', 'D_24'), ('B_12', 'C_13', 'B_14', 'B_15', 'C_15')):
        assert lie_closure([element(su5, t) for t in texts]).dimension == 24


def test_example6_closure_is_su6():
    su6 = AlgebraKind('su', 6)
    drift = element(su6, 'C_14 + 2*B_45 + 3*B_15 - 2*C_25 + D_25 + B_56 - C_36')
    controls = [element(su6, t) for t in ('B_12', 'B_13', 'C_13', 'C_23', 'B_46', 'C_56', 'B_56', 'D_45')]
    assert lie_closure([drift] + controls).dimension == 35


def test_contains_sl_only_for_gl():
    with pytest.raises(KindMismatch):
        contains_sl(SpanBasis.empty(SO3))
    assert not contains_sl(lie_closure([element(GL2, 'E_12')]).basis)
    assert contains_sl(lie_closure([element(GL2, 'E_12'), element(GL2, 'E_21')]).basis)


@settings(max_examples=20, deadline=None)
@given(nonzero, nonzero, nonzero, nonzero, nonzero)
def test_basis_drift_reduction_reaches_diagonal(l1, l2, l3, l4, l5):
    gl4 = AlgebraKind('gl', 4)
    e12, e21 = element(gl4, 'E_12'), element(gl4, 'E_21')
    a = (e12 * l1 + element(gl4, 'E_13') * l2 + element(gl4, 'E_31') * l3
         + element(gl4, 'E_33') * l4 + element(gl4, 'E_42') * l5)
    reduced = a - e12 * l1
    first = reduced - bracket(bracket(reduced, e21), e12)
    assert first == element(gl4, 'E_31') * l3 + element(gl4, 'E_33') * l4
    assert first - bracket(bracket(first, e12), e21) == element(gl4, 'E_33') * l4


def test_drift_self_loops_feed_the_closure(su5):
    a = (element(su5, 'C_12 - 2*B_25') + element(su5, '2*B_12 + D_15 + 3*C_45')
         + element(su5, 'B_34 - C_34'))
    b12, b15, c34, b14 = (element(su5, t) for t in ('B_12', 'B_15', 'C_34', 'B_14'))
    reduced = a + 2 * bracket(b15, b12) - 2 * b12 + c34
    assert reduced == element(su5, 'C_12 + D_15 + 3*C_45 + B_34')
    assert bracket(reduced, c34) == element(su5, '3*B_35 + 2*D_34')
    assert bracket(bracket(reduced, c34), b14) == element(su5, '2*C_14')


def test_multi_edge_in_drift_produces_diagonal(su5):
    a = (element(su5, 'C_12 - 2*B_25') + element(su5, '2*B_12 + 3*C_45') + element(su5, 'B_34 - C_34'))
    b12, b15, c34 = (element(su5, t) for t in ('B_12', 'B_15', 'C_34'))
    reduced = a + 2 * bracket(b15, b12) - 2 * b12 + c34
    assert reduced == element(su5, 'C_12 + 3*C_45 + B_34')
    assert bracket(b12, reduced) == element(su5, '2*D_12')


@settings(max_examples=20, deadline=None)
@given(nonzero, nonzero, nonzero)
def test_split_control_identity(l1, l2, l3):
    su6 = AlgebraKind('su', 6)
    a = (element(su6, 'C_14 + 2*B_45') * l1 + element(su6, '3*B_15 - 2*C_25 + D_25') * l2
         + element(su6, 'B_56 - C_36') * l3)
    result = bracket(bracket(a, element(su6, 'B_13')), element(su6, 'B_12'))
    assert result == element(su6, 'C_26') * l3
