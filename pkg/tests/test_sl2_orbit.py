import pytest

from hodge_limits.linalg import I, Matrix, Subspace
from hodge_limits.mixed_hodge import deligne_splitting
from hodge_limits.models import index_one_model, two_dim_family, weight_one_model
from hodge_limits.sl2_orbit import (Sl2Error, canonical_grading, check_orbit_correspondence,
                                    complete_sl2_triple, compute_c_space, eigenspaces,
                                    grading_transport, hodge_pieces, nilpotent_orbit_eval)

from oracles import jordan_matrix


def test_standard_triple():
    N = Matrix([[0, 0], [1, 0]])
    Y = Matrix.diag([1, -1])
    t = complete_sl2_triple(N, Y)
    assert t.n_plus == Matrix([[0, 1], [0, 0]])
    assert t.is_valid()


def test_three_dim_irreducible():
    N = jordan_matrix([3]).T()
    Y = Matrix.diag([2, 0, -2])
    t = complete_sl2_triple(N, Y)
    assert all(t.relations().values())


def test_incompatible_grading():
    N = Matrix([[0, 0], [1, 0]])
    with pytest.raises(Sl2Error):
        complete_sl2_triple(N, Matrix.diag([1, 1]))


def test_eigenspaces_reject_non_diagonalizable():
    with pytest.raises(Sl2Error):
        eigenspaces(Matrix([[1, 1], [0, 1]]))
    assert {k: v.dim for k, v in eigenspaces(Matrix.diag([2, -1, 2])).items()} == {-1: 1, 2: 2}


def test_c_space_of_single_block():
    C = compute_c_space(Matrix([[0, 1], [0, 0]]))
    assert C.dim == 1
    assert C.contains(Matrix([[0, 5], [0, 0]]))
    assert not C.contains(Matrix.identity(2))


def test_canonical_grading_weight_one():
    M = weight_one_model()
    G = canonical_grading(deligne_splitting(M.W, M.F), 1)
    assert G.grades(M.W, 1)
    t = complete_sl2_triple(M.N, G.y)
    assert t.is_valid()


def test_grading_transport_identity():
    M = weight_one_model()
    G = canonical_grading(deligne_splitting(M.W, M.F), 1)
    X = grading_transport(G, G.y)
    assert X is not None and X.is_zero()


def test_orbit_eval_pieces():
    M = weight_one_model()
    F = nilpotent_orbit_eval(M.N, M.F, I)
    pieces = hodge_pieces(F, 1)
    assert {k: U.dim for k, U in pieces.items()} == {(1, 0): 1, (0, 1): 1}
    assert pieces[(1, 0)] == Subspace.span([[I, 1]], 2)


@pytest.mark.parametrize("m,middle", [(1, {}), (3, {3: 1, 2: 1})])
def test_correspondence(m, middle):
    M = index_one_model(m, middle)
    v = check_orbit_correspondence(M.S, M.N, M.F, m)
    assert v.passed, v.first_failure()


def test_correspondence_rejects_non_split():
    M = weight_one_model()
    mhs = two_dim_family(0, 1)
    v = check_orbit_correspondence(M.S, M.N, mhs.F, 1)
    assert not v.passed
