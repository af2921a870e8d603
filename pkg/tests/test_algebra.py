import json
import random
from fractions import Fraction

import pytest

from gmlab.algebra import (
    AlgebraError, ClosureCapExceeded, build, gamma, load_algebra, mult_matrix, multiply, operator_matrix,
    right_ideal_closure, subalgebra_closure,
)
from gmlab.exact import Q, rank, span_basis
from gmlab.transposition import construct_model, dihedral_set

from helpers import F13, alg


def test_products_follow_the_rule():
    A = alg("dihedral:5")
    eta = Fraction(-1, 3)
    for i in range(5):
        for j in range(5):
            prod = dict(A.products[i][j])
            if i == j:
                assert prod == {i: 1}
                continue
            top = A.sys.conj[j][i]
            assert set(prod) == set(range(5))
            assert prod[top] == 1
            assert all(c == eta for k, c in prod.items() if k != top)


def test_idempotent_and_noncommutative():
    A = alg("dihedral:7", Fraction(1, 2))
    e0, e1 = A.basis_vector(0), A.basis_vector(1)
    assert multiply(A, e0, e0) == e0
    assert multiply(A, e0, e1) != multiply(A, e1, e0)


def test_bilinear():
    A = alg("frobenius:3,2", Fraction(2, 7))
    rng = random.Random(1)
    rv = lambda: [Fraction(rng.randint(-3, 3)) for _ in range(A.n)]
    x, y, z = rv(), rv(), rv()
    c = Fraction(3, 5)
    lhs = multiply(A, [a + c * b for a, b in zip(x, y)], z)
    rhs = [a + c * b for a, b in zip(multiply(A, x, z), multiply(A, y, z))]
    assert lhs == rhs


def test_matrix_conventions():
    A = alg("dihedral:5")
    R = mult_matrix(A, 0, "left")
    M = operator_matrix(A, 0, "left")
    assert M == [list(c) for c in zip(*R)]
    for i in range(5):
        assert R[i] == multiply(A, A.basis_vector(0), A.basis_vector(i))
        assert mult_matrix(A, 0, "right")[i] == multiply(A, A.basis_vector(i), A.basis_vector(0))


def test_build_guards():
    sys = construct_model("dihedral:5")
    for eta in (0, 1):
        with pytest.raises(AlgebraError):
            build(sys, Q, eta)
    with pytest.raises(AlgebraError):
        build(sys, Q, Fraction(-1))
    assert build(sys, Q, Fraction(-1), force=True).n == 5


def test_finite_field_build():
    A = alg("dihedral:5", "-1/3", F13)
    assert A.eta == 4
    assert multiply(A, A.basis_vector(0), A.basis_vector(0)) == A.basis_vector(0)


def test_load_round_trip():
    A = alg("frobenius:5,2")
    B = load_algebra(json.loads(json.dumps(A.to_json())))
    assert B == A


def test_closures():
    A = alg("frobenius:5,2")
    e = A.basis_vector
    two = subalgebra_closure(A, [e(0), e(1)])
    assert len(two) == 5
    assert two == span_basis([e(k) for k in dihedral_set(A.sys, 0, 1)])
    assert len(subalgebra_closure(A, [e(0), e(1), e(5)])) == 25
    with pytest.raises(ClosureCapExceeded) as info:
        subalgebra_closure(A, [e(0), e(1), e(5)], cap=10)
    assert len(info.value.basis) > 10


def test_subalgebra_is_closed():
    A = alg("frobenius:3,2", Fraction(1, 2))
    B = subalgebra_closure(A, [A.basis_vector(0), A.basis_vector(1)])
    for u in B:
        for v in B:
            assert rank(B + [multiply(A, u, v)]) == len(B)


def test_right_ideal_is_everything():
    A = alg("dihedral:7", Fraction(1, 2))
    assert len(right_ideal_closure(A, A.basis_vector(3))) == 7
    with pytest.raises(AlgebraError):
        right_ideal_closure(A, A.zero())


def test_gamma():
    A = alg("dihedral:5")
    assert gamma(A, [1, 4]) == [0, 1, 0, 0, 1]
