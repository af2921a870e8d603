import json

import pytest

from gmlab.transposition import (
    SystemError_, TranspositionSystem, blocks, burnside23, closure, compose, conjugation_group, conjugation_perm,
    construct_model, dihedral, dihedral_set, frobenius, validate_system,
)


def test_dihedral_conjugation_formula():
    s = dihedral(7)
    assert s.n == 7
    assert all(s.conj[i][j] == (2 * j - i) % 7 for i in range(7) for j in range(7))
    assert sorted(dihedral_set(s, 0, 1)) == list(range(7))


def test_frobenius_indices():
    s = frobenius(5, 2)
    assert s.n == 25
    # (1,0) has index 1, (0,1) has index p
    assert s.conj[1][0] == 4  # -(1,0) = (4,0)
    assert s.conj[5][0] == 20  # -(0,1) = (0,4)
    assert sorted(dihedral_set(s, 0, 1)) == [0, 1, 2, 3, 4]
    assert sorted(dihedral_set(s, 0, 5)) == [0, 5, 10, 15, 20]


@pytest.mark.parametrize("spec", ["dihedral:3", "dihedral:5", "dihedral:11", "frobenius:5,2", "frobenius:3,2",
                                  "frobenius:3,3", "burnside23"])
def test_models_validate(spec):
    s = construct_model(spec)
    rep = validate_system(s)
    assert rep.ok, rep.failures
    for a in range(s.n):
        part = blocks(s, a)
        assert sorted(x for b in part.blocks for x in b) == [x for x in range(s.n) if x != a]
        assert all(len(b) == s.p - 1 for b in part.blocks)


@pytest.mark.parametrize("spec", ["dihedral:4", "dihedral:2", "frobenius:5,0", "nonsense", "file:/no/such/file"])
def test_bad_specs(spec):
    with pytest.raises(SystemError_):
        construct_model(spec)


def test_validation_catches_broken_table():
    s = dihedral(5)
    conj = [list(r) for r in s.conj]
    conj[1][0], conj[2][0] = conj[2][0], conj[1][0]
    rep = validate_system(TranspositionSystem(5, s.labels, tuple(tuple(r) for r in conj)))
    assert not rep.ok
    assert rep.failures


def test_json_round_trip(tmp_path):
    s = frobenius(3, 2)
    path = tmp_path / "sys.json"
    path.write_text(json.dumps(s.to_json()))
    assert construct_model(f"file:{path}") == s
    assert TranspositionSystem.from_json(json.loads(path.read_text())) == s


def test_dihedral_set_rejects_equal():
    with pytest.raises(ValueError):
        dihedral_set(dihedral(5), 2, 2)


@pytest.mark.parametrize("spec,order", [("dihedral:5", 10), ("dihedral:7", 14), ("frobenius:5,2", 50),
                                        ("frobenius:3,2", 18)])
def test_conjugation_group_orders(spec, order):
    g = conjugation_group(construct_model(spec))
    assert g.complete and g.order == order


def test_conjugation_group_cap():
    g = conjugation_group(construct_model("frobenius:5,2"), cap=20)
    assert not g.complete and g.order >= 20


def test_closure_and_compose():
    r = (1, 2, 0)
    s = (0, 2, 1)
    els, done = closure([r, s])
    assert done and len(els) == 6
    assert compose(r, (2, 0, 1)) == (0, 1, 2)


# ---------------------------------------------------------------- independent oracle for the exponent-3 model
#
# Heisenberg group as unitriangular 3x3 matrices over Z/3, inverting automorphism
# built by extending x -> x^-1, y -> y^-1 along words, semidirect product with <t>.


def _mat_mul(A, B):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(3)) % 3 for j in range(3)) for i in range(3))


def _heis(a, b, c):
    return ((1, a, c), (0, 1, b), (0, 0, 1))


def _oracle():
    I = _heis(0, 0, 0)
    x, y = _heis(1, 0, 0), _heis(0, 1, 0)
    xi, yi = _heis(2, 0, 0), _heis(0, 2, 0)
    image = {I: I}
    frontier = [I]
    while frontier:
        nxt = []
        for g in frontier:
            for gen, img in ((x, xi), (y, yi)):
                h = _mat_mul(g, gen)
                hi = _mat_mul(image[g], img)
                if h in image:
                    assert image[h] == hi  # well defined
                else:
                    image[h] = hi
                    nxt.append(h)
        frontier = nxt
    H = sorted(image)
    assert len(H) == 27

    def mul(u, v):
        (g, e), (h, f) = u, v
        hh = image[h] if e else h
        return _mat_mul(g, hh), e ^ f

    G = [(g, e) for g in H for e in (0, 1)]
    inv = {u: next(v for v in G if mul(u, v) == (I, 0)) for u in G}
    t = (I, 1)
    cls = sorted({mul(mul(inv[g], t), g) for g in G})
    idx = {c: i for i, c in enumerate(cls)}
    perms = [tuple(idx[mul(mul(a, b), a)] for b in cls) for a in cls]  # b -> b^a, a an involution
    return cls, perms


def test_burnside23_matches_oracle():
    cls, perms = _oracle()
    s = burnside23()
    assert s.n == len(cls) == 9
    els, done = closure(perms)
    ours = conjugation_group(s)
    assert done and ours.complete
    assert ours.order == len(els) == 18
    # same multiset of dihedral-set sizes and same cycle types of the conjugation action
    def cycle_type(p):
        seen, out = set(), []
        for i in range(len(p)):
            if i not in seen:
                k, j = 0, i
                while j not in seen:
                    seen.add(j)
                    j = p[j]
                    k += 1
                out.append(k)
        return tuple(sorted(out))
    assert sorted(cycle_type(p) for p in perms) == sorted(cycle_type(conjugation_perm(s, a)) for a in range(s.n))


def test_burnside23_blocks():
    s = burnside23()
    assert all(len(blocks(s, a).blocks) == 4 for a in range(s.n))
