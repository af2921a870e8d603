from fractions import Fraction as Fr

import pytest

from gmlab.forms import form, frobenius_defect, gram, gram_det_closed_form, invariance_under_perm, radical
from gmlab.algebra import multiply
from gmlab.transposition import conjugation_perm

from helpers import F13, alg


@pytest.mark.parametrize("model", ["dihedral:5", "dihedral:7", "frobenius:3,2", "burnside23"])
def test_frobenius_at_special_eta(model):
    assert frobenius_defect(alg(model)) == []


def test_defect_at_generic_eta():
    bad = frobenius_defect(alg("dihedral:5", Fr(1, 2)))
    assert bad
    a, b, c, lhs, rhs = bad[0]
    assert lhs != rhs


def test_form_against_basis():
    A = alg("dihedral:5", Fr(2, 9))
    e = A.basis_vector
    assert form(A, e(0), e(0)) == 1
    assert form(A, e(0), e(3)) == Fr(2, 9)
    x, y, z = [Fr(1), 2, 0, -1, 3], [Fr(0), 1, 1, 1, -2], [Fr(5), 0, 0, 1, 1]
    # invariance fails away from eta = -1/(p-2)
    assert form(A, multiply(A, x, y), z) != form(A, y, multiply(A, x, z))


@pytest.mark.parametrize("n,eta", [(5, Fr(-1, 3)), (9, Fr(1, 2)), (25, Fr(-1, 3)), (7, Fr(3, 11))])
def test_determinant_closed_form(n, eta):
    A = alg({5: "dihedral:5", 9: "frobenius:3,2", 25: "frobenius:5,2", 7: "dihedral:7"}[n], eta)
    g = gram(A)
    assert g.determinant == gram_det_closed_form(n, eta)
    assert g.determinant_matches and g.radical_basis == []


def test_degenerate_radical():
    g = gram(alg("dihedral:5", Fr(-1, 4)))
    assert g.determinant == 0
    (v,) = g.radical_basis
    assert len(set(v)) == 1 and v[0] != 0  # spanned by the all-ones vector
    assert len(radical(alg("dihedral:5", Fr(-1, 4)))) == 1


def test_finite_field_form():
    A = alg("dihedral:5", "-1/3", F13)
    assert gram(A).determinant_matches


def test_invariance():
    A = alg("frobenius:3,2")
    assert all(invariance_under_perm(A, conjugation_perm(A.sys, a)) for a in range(A.n))
