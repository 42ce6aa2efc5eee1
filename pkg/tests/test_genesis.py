import pytest

from sylvester.cyclo import zeta_pow
from sylvester.exactmat import Parity, homogeneous_parity, rank, supertrace, trace
from sylvester.genesis import (
    AlgebraMode,
    ModeError,
    admissible_indices,
    build_generators,
    closure_dimension,
    expected_matrix_T,
    generate_basis,
    grid,
    is_admissible,
    t_parity,
)


def test_mode_preconditions():
    with pytest.raises(ModeError):
        AlgebraMode.plain(1)
    with pytest.raises(ModeError):
        AlgebraMode.super_(0)
    with pytest.raises(ModeError):
        AlgebraMode("affine", 3)
    assert AlgebraMode.super_(2).dim == 4 and AlgebraMode.super_(2).order == 4


@pytest.mark.parametrize("n", range(2, 7))
def test_weyl_commutation_of_generators(n):
    D, S = (e.matrix for e in build_generators(AlgebraMode.plain(n)))
    assert S @ D == (D @ S).scale(zeta_pow(n, 1))
    assert S**n == D**0 and D**n == D**0


def test_sl2_by_hand():
    mode = AlgebraMode.plain(2)
    labels = [b.label for b in generate_basis(mode)]
    assert labels == ["D", "S", "T(1,1)"]
    T11 = grid(mode).T(1, 1)
    # [diag(1,-1), [[0,1],[1,0]]] = [[0,2],[-2,0]]
    assert T11.rows() == [[0, 2], [-2, 0]]


@pytest.mark.parametrize("n", range(2, 7))
def test_plain_admissible_count(n):
    assert len(admissible_indices(AlgebraMode.plain(n))) == n * n - 3


@pytest.mark.parametrize("n", range(2, 7))
def test_plain_rank_and_trace(n):
    mode = AlgebraMode.plain(n)
    basis = generate_basis(mode)
    assert len(basis) == n * n - 1
    assert rank([b.matrix for b in basis]) == n * n - 1
    assert all(not trace(b.matrix) for b in basis)


@pytest.mark.parametrize("n", range(2, 6))
def test_closure_matches_rank(n):
    assert closure_dimension(AlgebraMode.plain(n)) == n * n - 1


@pytest.mark.parametrize("n", range(2, 8))
def test_closed_form_matches_recursion(n):
    mode = AlgebraMode.plain(n)
    g = grid(mode)
    for idx in admissible_indices(mode):
        if idx.m < n:
            assert expected_matrix_T(mode, idx.m, idx.k) == g.T(idx.m, idx.k), idx


def test_closed_form_rejects_bottom_row_and_super():
    with pytest.raises(IndexError):
        expected_matrix_T(AlgebraMode.plain(3), 3, 2)
    with pytest.raises(ModeError):
        expected_matrix_T(AlgebraMode.super_(2), 1, 1)


def test_admissibility_corners():
    m = AlgebraMode.plain(4)
    assert not is_admissible(m, 1, 4) and not is_admissible(m, 4, 4) and not is_admissible(m, 4, 1)
    assert is_admissible(m, 4, 2) and is_admissible(m, 3, 4)
    s = AlgebraMode.super_(2)
    assert is_admissible(s, 4, 4) and not is_admissible(s, 1, 4)


def test_super_one():
    mode = AlgebraMode.super_(1)
    basis = generate_basis(mode)
    assert len(basis) == 4
    assert rank([b.matrix for b in basis]) == 4
    assert closure_dimension(mode) == 4
    D = basis[0].matrix
    # the clock generator is not supertraceless for n = 1
    assert supertrace(D) == 2


@pytest.mark.parametrize("n", [2, 3])
def test_super_rank_deficiency(n):
    mode = AlgebraMode.super_(n)
    basis = generate_basis(mode)
    G = 2 * n
    assert len(basis) == G * G
    r = rank([b.matrix for b in basis])
    assert r == G * G - 1 == closure_dimension(mode)
    assert not grid(mode).T(G, n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_super_parities_follow_row(n):
    mode = AlgebraMode.super_(n)
    for b in generate_basis(mode):
        if b.matrix:
            assert homogeneous_parity(b.matrix) == b.parity
        if b.index is not None:
            assert b.parity == t_parity(b.index.m)
    assert t_parity(1) == Parity.ODD and t_parity(2) == Parity.EVEN
