from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hodge_limits.linalg import (I, ONE, ZERO, BilinearForm, LinalgError, Matrix, Scalar,
                                 Subspace, exp_nilpotent, image, is_positive_definite_hermitian,
                                 kernel, quotient_basis, solve)

small = st.integers(min_value=-4, max_value=4)
scalars = st.builds(lambda a, b, c: Scalar(Fraction(a, c), b), small, small,
                    st.integers(min_value=1, max_value=3))


def matrices(n, m=None):
    m = n if m is None else m
    return st.lists(st.lists(small, min_size=m, max_size=m), min_size=n, max_size=n).map(
        lambda rows: Matrix(rows, m))


@pytest.mark.parametrize("text,re,im", [
    ("3/4", Fraction(3, 4), 0), ("+3/4", Fraction(3, 4), 0), ("-2", -2, 0),
    ("i", 0, 1), ("-i", 0, -1), ("1/2+3/4*i", Fraction(1, 2), Fraction(3, 4)),
    ("1/2-i", Fraction(1, 2), -1), ("-3*i", 0, -3),
])
def test_scalar_parse(text, re, im):
    s = Scalar.parse(text)
    assert (s.re, s.im) == (re, im)


@given(scalars)
def test_scalar_roundtrip(x):
    assert Scalar.parse(str(x)) == x


@given(scalars, scalars)
def test_field_axioms(a, b):
    assert a + b == b + a
    assert a * b == b * a
    if b:
        assert (a / b) * b == a
    assert (a * b).conj() == a.conj() * b.conj()


def test_bad_literal():
    with pytest.raises(LinalgError):
        Scalar.parse("1/2+x")
    with pytest.raises(TypeError):
        Matrix([[0.5]])


@given(matrices(3))
def test_rank_nullity(M):
    assert M.rank() + kernel(M).dim == 3
    assert image(M).dim == M.rank()


@given(matrices(3))
def test_inverse(M):
    if M.rank() == 3:
        assert M @ M.inverse() == Matrix.identity(3)
    else:
        with pytest.raises(LinalgError):
            M.inverse()


@given(matrices(4, 2), matrices(4, 2))
def test_subspace_lattice(A, B):
    U = Subspace.span(A.columns(), 4)
    V = Subspace.span(B.columns(), 4)
    assert (U + V).dim + (U & V).dim == U.dim + V.dim
    assert U & V <= U and U <= U + V
    assert len(quotient_basis(U & V, U)) == U.dim - (U & V).dim


def test_canonical_form():
    a = Subspace.span([[1, 2, 0], [0, 1, 1]], 3)
    b = Subspace.span([[1, 3, 1], [2, 5, 1]], 3)
    assert a == b and hash(a) == hash(b)


def test_solve_and_conj():
    M = Matrix([[1, I], [0, 1]])
    x = solve(M, [ONE, I])
    assert M @ x == (ONE, I)
    assert solve(Matrix([[0, 0]]), [ONE]) is None
    assert Subspace.span([[1, I]], 2).conj() == Subspace.span([[1, -I]], 2)


def test_exp_nilpotent():
    N = Matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    E = exp_nilpotent(N, 2)
    assert E == Matrix([[1, 2, 2], [0, 1, 2], [0, 0, 1]])
    assert exp_nilpotent(N, -2) @ E == Matrix.identity(3)


def test_forms():
    S = BilinearForm(Matrix([[0, 1], [-1, 0]]), BilinearForm.ANTISYMMETRIC)
    assert S([1, 0], [0, 1]) == ONE
    with pytest.raises(LinalgError):
        BilinearForm(Matrix([[0, 1], [1, 0]]), BilinearForm.ANTISYMMETRIC)
    assert is_positive_definite_hermitian(Matrix([[2, I], [-I, 2]]))
    assert not is_positive_definite_hermitian(Matrix([[1, 2], [2, 1]]))
    assert ZERO == 0


def test_from_blocks():
    A = Matrix.identity(2)
    B = Matrix.from_blocks([[A, Matrix.zeros(2, 1)]])
    assert B.shape == (2, 3)
