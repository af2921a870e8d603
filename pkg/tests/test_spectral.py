from fractions import Fraction

import pytest

from gmlab.algebra import apply_perm, multiply, operator_matrix
from gmlab.exact import matvec, rank
from gmlab.spectral import (
    canonical_eigenbasis, decompose, eigenbasis_values, left_candidates, matrix_to_perm, plus_minus_split,
    right_candidates, tau_matrix,
)
from gmlab.transposition import conjugation_perm

from helpers import F13, alg


@pytest.mark.parametrize("p", [5, 7, 11])
@pytest.mark.parametrize("generic", [False, True])
def test_canonical_vectors(p, generic):
    A = alg(f"dihedral:{p}", Fraction(3, 7) if generic else None)
    vals = eigenbasis_values(A)
    vecs = canonical_eigenbasis(A, 0, 1)
    assert len(vecs) == p
    M = operator_matrix(A, 0, "left")
    for name, v in vecs.items():
        assert matvec(M, v) == [vals[name[0]] * x for x in v], name
    assert rank(list(vecs.values())) == p


def test_z_vector_coordinates():
    A = alg("dihedral:5")
    assert canonical_eigenbasis(A, 0, 1)["z"] == [Fraction(4, 3), 1, 1, 1, 1]


def test_left_decomposition_frobenius():
    A = alg("frobenius:5,2")
    d = decompose(A, 7, "left")
    assert d.semisimple and d.primitive
    assert d.dims == [1, 6, 6, 12]
    assert d.spectrum() == left_candidates(A)


def test_right_side_over_f13_and_q():
    d = decompose(alg("dihedral:5", "-1/3", F13), 0, "right")
    assert d.semisimple
    assert sorted(int(x) for x in d.spectrum()) == [0, 1, 2, 3, 11]
    q = decompose(alg("dihedral:5"), 0, "right")
    assert q.primitive and not q.semisimple and q.deficit == 2


def test_right_candidates_over_f13():
    A = alg("dihedral:5", "-1/3", F13)
    # eta - 1 = 3, times the square roots of -1 (5 and 8)
    assert sorted(int(x) for x in right_candidates(A)) == sorted({1, 0, 3, 15 % 13, 24 % 13})


@pytest.mark.parametrize("model", ["dihedral:5", "frobenius:3,2", "burnside23"])
def test_tau_is_conjugation(model):
    A = alg(model)
    for a in range(A.n):
        perm = matrix_to_perm(tau_matrix(A, a))
        assert perm == conjugation_perm(A.sys, a)


def test_tau_is_an_automorphism():
    A = alg("dihedral:7", Fraction(1, 2))
    perm = matrix_to_perm(tau_matrix(A, 2))
    for x in range(7):
        for y in range(7):
            ex, ey = A.basis_vector(x), A.basis_vector(y)
            assert apply_perm(multiply(A, ex, ey), perm) == multiply(A, apply_perm(ex, perm), apply_perm(ey, perm))


def test_split_dims():
    A = alg("frobenius:5,2")
    s = plus_minus_split(A, 0)
    assert (len(s.plus), len(s.minus)) == (13, 12)


def test_matrix_to_perm_rejects():
    assert matrix_to_perm([[1, 1], [0, 1]]) is None
    assert matrix_to_perm([[0, 1], [1, 0]]) == (1, 0)


def test_exponent_three_model_split():
    # the inverting automorphism fixes the centre, so |t^G| = 9 and each axis has 4 blocks
    A = alg("burnside23")
    d = decompose(A, 0, "left")
    assert A.n == 9 and d.dims == [1, 4, 0, 4]
    s = plus_minus_split(A, 0)
    assert (len(s.plus), len(s.minus)) == (5, 4)
