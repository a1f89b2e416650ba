import pytest
import sympy
from hypothesis import given, settings, strategies as st

from nilpex.arith import Scalar, parse_scalar
from nilpex.linalg import Matrix, Subspace, complete_basis, intersect, nullspace, rank, rref

entries = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def matrices(max_rows=4, max_cols=5):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r)))


def sym(rows):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])


def frac_rows(m: Matrix):
    return [[x.to_fraction() for x in r] for r in m.rows]


@given(matrices())
def test_rref_matches_sympy(rows):
    r, pivots, splits = rref(Matrix(rows))
    expected, exp_pivots = sym(rows).rref()
    assert sym(frac_rows(r)) == expected
    assert tuple(pivots) == tuple(exp_pivots)
    assert not splits


@given(matrices())
def test_rref_is_idempotent(rows):
    once = rref(Matrix(rows))[0]
    assert rref(once)[0] == once


@given(matrices())
def test_nullspace_certificate(rows):
    m = Matrix(rows)
    ns = nullspace(m)
    assert ns.dim + rank(m.rows, m.ncols) == m.ncols
    for v in ns.basis:
        assert all(x.is_zero() for x in m.apply(v))


@settings(max_examples=40)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(entries, min_size=n, max_size=n),
                                                      min_size=n, max_size=n)))
def test_determinant_matches_sympy(rows):
    d = Matrix(rows).det().to_fraction()
    assert sympy.Rational(d.numerator, d.denominator) == sym(rows).det()


def test_symbolic_pivot_is_recorded_as_a_case_split():
    m = Matrix([[parse_scalar("l"), Scalar(1)], [Scalar(0), Scalar(0)]])
    r, pivots, splits = rref(m)
    assert tuple(pivots) == (0,)
    assert [str(p) for p in splits] == ["l"]
    assert r[0, 1] == parse_scalar("1/l")


def test_subspace_span_and_membership():
    s = Subspace.span([(1, 1, 0), (2, 2, 0)], 3)
    assert s.dim == 1
    assert (3, 3, 0) in s and (1, 0, 0) not in s
    t = Subspace.span([(1, 1, 0), (0, 0, 1)], 3)
    assert s.issubspace(t) and not t.issubspace(s)
    assert Subspace.span([(2, 2, 0), (0, 0, 5)], 3).same_span(t)


def test_noncanonical_span_keeps_given_order():
    s = Subspace.span([(0, 1), (1, 1), (1, 0)], 2, canonical=False)
    assert [tuple(int(x.to_fraction()) for x in v) for v in s.basis] == [(0, 1), (1, 1)]


def test_complete_basis_and_intersection():
    inner = Subspace.span([(1, 0, 0)], 3)
    outer = Subspace.span([(1, 0, 0), (0, 1, 0)], 3)
    comp = complete_basis(inner, outer)
    assert comp.dim == 1 and comp.basis[0] in outer and comp.basis[0] not in inner
    with pytest.raises(ValueError):
        complete_basis(Subspace.span([(0, 0, 1)], 3), outer)
    meet = intersect(outer, Subspace.span([(0, 1, 0), (0, 0, 1)], 3))
    assert meet.same_span(Subspace.span([(0, 1, 0)], 3))


def test_matrix_algebra():
    a = Matrix([[1, 2], [3, 4]])
    assert a @ Matrix.identity(2) == a
    assert a.T.T == a
    assert (a - a).is_zero()
    assert a.det() == Scalar(-2)
    assert Matrix.from_columns([(1, 3), (2, 4)]) == a
