import json
from fractions import Fraction as Fr

import pytest

from gmlab.axioms import (
    AbstractAlgebra, DihedralPatternError, audit_lemmas, reconstruct_and_compare, recover_dihedral, verify_gm_type,
)

from helpers import alg


@pytest.mark.parametrize("model", ["dihedral:5", "frobenius:3,2", "burnside23", "frobenius:5,2"])
def test_round_trip_recovers_everything(model):
    A = alg(model, Fr(1, 2))
    X = AbstractAlgebra.from_json(json.loads(json.dumps(A.abstract_json())))
    rep = verify_gm_type(X)
    assert rep.passed, rep.to_json()
    assert rep.recovered_conj == [list(r) for r in A.sys.conj]
    rec = reconstruct_and_compare(X, rep)
    assert rec["isomorphic"] and rec["first_difference"] is None


def test_p_inferred_from_support():
    obj = alg("dihedral:7").abstract_json()
    del obj["p"], obj["labels"]
    X = AbstractAlgebra.from_json(obj)
    assert X.p == 7 and verify_gm_type(X).passed


def test_recover_dihedral():
    A = alg("dihedral:5")
    support, top = recover_dihedral(A, 0, 1)
    assert support == (0, 1, 2, 3, 4) and top == A.sys.conj[1][0]
    X = AbstractAlgebra.from_gm(A).perturbed(0, 1, 3, Fr(1))
    with pytest.raises(DihedralPatternError):
        recover_dihedral(X, 0, 1)


@pytest.mark.parametrize("i,j,k,delta,axiom", [
    (2, 2, 2, Fr(1), "axiom1_idempotent"),
    (2, 2, 0, Fr(1, 5), "axiom1_idempotent"),
    (0, 1, 4, Fr(2), "axiom2_dihedral"),
])
def test_perturbations_are_attributed(i, j, k, delta, axiom):
    X = AbstractAlgebra.from_gm(alg("dihedral:7")).perturbed(i, j, k, delta)
    rep = verify_gm_type(X)
    assert not rep.passed
    assert not rep.axioms[axiom]["pass"]
    assert rep.axioms[axiom]["witnesses"]
    assert reconstruct_and_compare(X, rep)["isomorphic"] is False


def test_incomplete_products_rejected():
    obj = alg("dihedral:5").abstract_json()
    obj["products"] = obj["products"][:-1]
    with pytest.raises(ValueError):
        AbstractAlgebra.from_json(obj)


def test_audit_structure():
    rep = audit_lemmas(alg("dihedral:7", Fr(1, 2)), 0, 1)
    names = {e["name"] for e in rep.entries}
    assert "bemgam.2" in names and "prod1.5" in names
    assert rep.all_match("bemgam.1") and rep.all_match("prod3")
    assert rep.by_prefix("prod1.2") == []  # only at p = 5


def test_audit_extra_gamma_term():
    for p, eta, extra in ((5, Fr(1, 2), "5/3"), (7, Fr(1, 2), "7/5"), (7, Fr(-1, 5), "0")):
        (e,) = audit_lemmas(alg(f"dihedral:{p}", eta), 0, 1).by_prefix("prod1.5")
        assert e["extra_gamma"] == extra
        assert e["match"] == (extra == "0")


def test_audit_y_times_z_identity_is_false_but_membership_holds():
    rep = audit_lemmas(alg("dihedral:7"), 0, 1)
    idents = [e for e in rep.by_prefix("prod1.4") if "in L" not in e["name"]]
    member = [e for e in rep.by_prefix("prod1.4") if "in L" in e["name"]]
    assert idents and not any(e["match"] for e in idents)
    assert member and all(e["match"] for e in member)


def test_audit_needs_distinct_axes():
    with pytest.raises(ValueError):
        audit_lemmas(alg("dihedral:5"), 1, 1)
