"""Group-free checks on an algebra given only by structure constants.

An abstract algebra is tested against the four GM(p, eta) axioms, the
conjugation action is read back off the product supports, and the algebra
is rebuilt from that action for comparison.  ``audit_lemmas`` compares the
closed-form products of a dihedral block against the definition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import GMAlgebra, build, gamma, multiply
from .exact import FieldSpec, format_scalar, good_characteristic, in_span, parse_scalar
from .spectral import canonical_eigenbasis
from .transposition import TranspositionSystem, conjugation_group, validate_system


@dataclass(frozen=True)
class AbstractAlgebra:
    field: FieldSpec
    eta: object
    p: int
    labels: tuple
    products: tuple  # products[i][j] = ((k, coeff), ...)

    @property
    def n(self) -> int:
        return len(self.labels)

    @classmethod
    def from_gm(cls, A: GMAlgebra) -> "AbstractAlgebra":
        return cls(A.field, A.eta, A.p, A.sys.labels, A.products)

    @classmethod
    def from_json(cls, obj: dict) -> "AbstractAlgebra":
        F = FieldSpec.parse(obj["field"])
        eta = parse_scalar(obj["eta"], F)
        n = int(obj["dim"])
        table = [[None] * n for _ in range(n)]
        for i, j, terms in obj["products"]:
            acc = {}
            for k, c in terms:
                acc[int(k)] = acc.get(int(k), F.zero) + parse_scalar(str(c), F)
            table[int(i)][int(j)] = tuple(sorted((k, c) for k, c in acc.items() if c))
        missing = [(i, j) for i in range(n) for j in range(n) if table[i][j] is None]
        if missing:
            raise ValueError(f"products table is not total, missing {missing[:3]}")
        p = obj.get("p")
        if p is None:
            # support size of any off-diagonal product
            p = len(table[0][1]) if n > 1 else 0
        labels = tuple(obj.get("labels") or [str(i) for i in range(n)])
        return cls(F, eta, int(p), labels, tuple(tuple(r) for r in table))

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "eta": format_scalar(self.eta),
            "p": self.p,
            "dim": self.n,
            "labels": list(self.labels),
            "products": [
                [i, j, [[k, format_scalar(c)] for k, c in self.products[i][j]]]
                for i in range(self.n)
                for j in range(self.n)
            ],
        }

    def perturbed(self, i: int, j: int, k: int, delta) -> "AbstractAlgebra":
        """Copy with the coefficient of e_k in e_i * e_j shifted by ``delta``."""
        acc = dict(self.products[i][j])
        acc[k] = acc.get(k, self.field.zero) + self.field(delta)
        new = tuple(sorted((kk, c) for kk, c in acc.items() if c))
        rows = [list(r) for r in self.products]
        rows[i][j] = new
        return AbstractAlgebra(self.field, self.eta, self.p, self.labels, tuple(tuple(r) for r in rows))


class DihedralPatternError(ValueError):
    def __init__(self, pair, reason):
        super().__init__(f"pair {pair}: {reason}")
        self.pair = pair
        self.reason = reason


def _abstract(A) -> AbstractAlgebra:
    return AbstractAlgebra.from_gm(A) if isinstance(A, GMAlgebra) else A


def recover_dihedral(A, i: int, j: int):
    """(I(i, j), j^i) read off the support of e_i * e_j."""
    A = _abstract(A)
    if i == j:
        raise ValueError("recover_dihedral needs distinct labels")
    if A.eta == 0 or A.eta == 1:
        raise ValueError("eta must avoid 0 and 1")
    terms = A.products[i][j]
    support = [k for k, _ in terms]
    if len(support) != A.p:
        raise DihedralPatternError((i, j), f"support has {len(support)} elements, expected {A.p}")
    ones = [k for k, c in terms if c == 1]
    if len(ones) != 1:
        raise DihedralPatternError((i, j), f"{len(ones)} coefficients equal to 1")
    if any(c != A.eta for k, c in terms if k != ones[0]):
        raise DihedralPatternError((i, j), "coefficients off the top term differ from eta")
    if i not in support or j not in support:
        raise DihedralPatternError((i, j), "support misses a factor")
    return tuple(support), ones[0]


@dataclass
class AxiomReport:
    axioms: dict = field(default_factory=dict)  # name -> {"pass": bool, "witnesses": [...]}
    recovered_conj: list | None = None
    reconstruction: dict | None = None

    @property
    def passed(self) -> bool:
        return all(v["pass"] for v in self.axioms.values())

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "axioms": self.axioms,
            "recovered_conj": self.recovered_conj,
            "reconstruction": self.reconstruction,
        }


def _verdict(witnesses, limit=10):
    return {"pass": not witnesses, "witnesses": witnesses[:limit], "count": len(witnesses)}


def verify_gm_type(A) -> AxiomReport:
    A = _abstract(A)
    n, p, F = A.n, A.p, A.field
    rep = AxiomReport()

    # 1: idempotent basis
    bad1 = [i for i in range(n) if A.products[i][i] != ((i, F.one),)]
    rep.axioms["axiom1_idempotent"] = _verdict(bad1)

    # 2: dihedral subalgebras
    bad2 = []
    rconj = [[None] * n for _ in range(n)]
    sets = {}
    for i in range(n):
        rconj[i][i] = i
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            try:
                support, top = recover_dihedral(A, i, j)
            except DihedralPatternError as e:
                bad2.append({"pair": [i, j], "reason": e.reason})
                continue
            rconj[j][i] = top
            sets[(i, j)] = frozenset(support)
    if not bad2:
        for (i, j), S in sets.items():
            reason = _check_dihedral_block(A, i, j, S, rconj)
            if reason:
                bad2.append({"pair": [i, j], "reason": reason})
    rep.axioms["axiom2_dihedral"] = _verdict(bad2)

    # 3: I(a, .) \ {a} partition T \ {a}
    bad3 = []
    if sets:
        for a in range(n):
            seen = {}
            covered = set()
            for t in range(n):
                if t == a or (a, t) not in sets:
                    continue
                blk = sets[(a, t)] - {a}
                if len(blk) != p - 1:
                    bad3.append({"axis": a, "with": t, "reason": "block size"})
                    continue
                for x in blk:
                    if x in seen and seen[x] != blk:
                        bad3.append({"axis": a, "with": t, "reason": f"blocks overlap at {x}"})
                        break
                    seen[x] = blk
                covered |= blk
            if covered != set(range(n)) - {a}:
                bad3.append({"axis": a, "reason": "blocks do not cover T minus the axis"})
    else:
        bad3.append({"reason": "no dihedral sets recovered"})
    rep.axioms["axiom3_partition"] = _verdict(bad3)

    # 4: phi_a : b -> b^a is an automorphism
    bad4 = []
    complete = all(x is not None for row in rconj for x in row)
    if not complete:
        bad4.append({"reason": "conjugation table incomplete"})
    else:
        for a in range(n):
            phi = [rconj[b][a] for b in range(n)]
            if sorted(phi) != list(range(n)):
                bad4.append({"axis": a, "reason": "phi is not a permutation"})
                continue
            for i in range(n):
                for j in range(n):
                    lhs = tuple(sorted((phi[k], c) for k, c in A.products[i][j]))
                    rhs = A.products[phi[i]][phi[j]]
                    if lhs != rhs:
                        bad4.append({"axis": a, "pair": [i, j]})
                        break
                else:
                    continue
                break
    rep.axioms["axiom4_automorphism"] = _verdict(bad4)

    if complete:
        rep.recovered_conj = [list(r) for r in rconj]
    return rep


def _check_dihedral_block(A, i, j, S, rconj):
    p = A.p
    seq = [i, j]
    while len(seq) < p:
        x, y = seq[-2], seq[-1]
        nxt = rconj[x][y]
        if nxt is None:
            return "recurrence left the recovered table"
        seq.append(nxt)
    if len(set(seq)) != p or set(seq) != S:
        return "canonical recurrence does not enumerate the support"
    pos = {x: k for k, x in enumerate(seq)}
    for u in seq:
        for v in seq:
            if u == v:
                want = ((u, A.field.one),)
            else:
                top = seq[(2 * pos[u] - pos[v]) % p]
                want = tuple(sorted((k, A.field.one if k == top else A.eta) for k in seq))
            if A.products[u][v] != want:
                return f"product of {u} and {v} differs from the dihedral model"
    return None


def reconstruct_and_compare(A, report: AxiomReport | None = None) -> dict:
    """Rebuild A_F(M, T, eta) from the recovered conjugation action and compare."""
    A = _abstract(A)
    report = report or verify_gm_type(A)
    if not report.passed:
        return {"isomorphic": False, "reason": "axioms failed", "group_order": None}
    sys = TranspositionSystem(A.p, tuple(A.labels), tuple(tuple(r) for r in report.recovered_conj))
    v = validate_system(sys)
    if not v.ok:
        return {"isomorphic": False, "reason": f"recovered system invalid: {v.failures[:3]}", "group_order": None}
    B = build(sys, A.field, A.eta, force=not good_characteristic(A.p, A.eta))
    first = None
    for i in range(A.n):
        for j in range(A.n):
            if tuple(B.products[i][j]) != tuple(A.products[i][j]):
                first = [i, j]
                break
        if first:
            break
    grp = conjugation_group(sys)
    out = {"isomorphic": first is None, "first_difference": first, "group_order": grp.order,
           "group_complete": grp.complete}
    report.reconstruction = out
    return out


# ---------------------------------------------------------------- lemma audit


def _add(*terms):
    """Linear combination of (coeff, vector) pairs."""
    out = [x * 0 for x in terms[0][1]]
    for c, v in terms:
        out = [o + c * x for o, x in zip(out, v)]
    return out


def _fmt(v):
    return [format_scalar(x) for x in v]


@dataclass
class AuditReport:
    axis: int
    other: int
    entries: list = field(default_factory=list)

    def record(self, name, kind, match, lhs=None, rhs=None, **extra):
        e = {"name": name, "kind": kind, "match": bool(match)}
        if lhs is not None:
            e["definitional"] = _fmt(lhs)
        if rhs is not None:
            e["printed"] = _fmt(rhs)
        e.update(extra)
        self.entries.append(e)

    def by_prefix(self, prefix):
        return [e for e in self.entries if e["name"] == prefix or e["name"].startswith(prefix + "[")]

    def all_match(self, prefix) -> bool:
        es = self.by_prefix(prefix)
        return bool(es) and all(e["match"] for e in es)

    def to_json(self) -> dict:
        return {"axis": self.axis, "other": self.other, "entries": self.entries}


def _signed_multiple(w, family, coeff):
    """(sign, index) with w == sign*coeff*family[index], else None."""
    for idx, v in family.items():
        for s in (1, -1):
            if w == [s * coeff * x for x in v]:
                return s, idx
    return None


def audit_lemmas(A: GMAlgebra, a: int, b: int) -> AuditReport:
    """Evaluate the closed-form products of the (a, b) block against the definition."""
    if a == b:
        raise ValueError("audit needs two distinct axes")
    p, eta, F = A.p, A.eta, A.field
    one = F.one
    lam1 = eta * (p - 2) + 1
    lam2 = 1 - eta
    named = canonical_eigenbasis(A, a, b)
    ea, z = named["a"], named["z"]
    ys = {i: named[f"y{i}"] for i in range(1, (p - 3) // 2 + 1)}
    xs = {i: named[f"x{i}"] for i in range(1, (p - 1) // 2 + 1)}
    plus = [ea, z] + list(ys.values())
    minus = list(xs.values())
    from .transposition import dihedral_set

    seq = dihedral_set(A.sys, a, b)
    g = gamma(A, seq)
    zero = A.zero()
    mul = lambda u, v: multiply(A, u, v)  # noqa: E731
    rep = AuditReport(a, b)

    # gamma identities
    for k, t in enumerate(seq, start=1):
        et = A.basis_vector(t)
        want = _add((lam1, g), (eta, et))
        rep.record(f"bemgam.1[a{k}*gamma]", "identity", mul(et, g) == want, mul(et, g), want)
        rep.record(f"bemgam.1[gamma*a{k}]", "identity", mul(g, et) == want, mul(g, et), want)
    r = eta * (p - 1) ** 2 + p
    gg = mul(g, g)
    rep.record("bemgam.2", "identity", gg == [r * x for x in g], gg, [r * x for x in g])

    # unit of the block subalgebra at eta = -1/(p-2)
    if eta == F(Fraction(-1, p - 2)):
        u = [(2 - p) * x for x in g]
        ok = all(mul(u, A.basis_vector(t)) == A.basis_vector(t) == mul(A.basis_vector(t), u) for t in seq)
        rep.record("remark.unit", "identity", ok)

    # prod1
    if p > 5:
        for i, y in ys.items():
            m = 2 * i if 4 * i <= p - 3 else p - 3 - 2 * i
            target = ys.get(m, zero) if m != 0 else zero  # y_0 read as 0
            want = [lam2 * (s - t) for s, t in zip(target, ys[1])]
            got = mul(y, ea)
            rep.record(f"prod1.1[y{i}*a]", "identity", got == want, got, want, printed_index=m)
    if p == 5:
        got = mul(ys[1], ea)
        want = [(eta - 1) * x for x in ys[1]]
        rep.record("prod1.2", "identity", got == want, got, want)
    c3 = (eta * (p - 3) + 1) / F(p - 2)
    for i, y in ys.items():
        got, want = mul(z, y), [c3 * x for x in y]
        rep.record(f"prod1.3[z*y{i}]", "identity", got == want, got, want)
    for i, y in ys.items():
        got = mul(y, z)
        want = _add((one, y), (one, mul(y, ea)))
        rep.record(f"prod1.4[y{i}*z]", "identity", got == want, got, want)
        rep.record(f"prod1.4[y{i}*z in L(y)]", "membership", in_span(list(ys.values()), got), got)
    got = mul(z, z)
    want = _add(((1 + 2 * eta * (p - 2)) / F((p - 2) ** 2), ea), (r, g))
    diff = [s - t for s, t in zip(got, want)]
    extra = None
    nz = [k for k in seq if g[k]]
    if all(diff[k] == diff[nz[0]] * g[k] for k in range(A.n)):
        extra = diff[nz[0]]
    rep.record("prod1.5", "identity", got == want, got, want,
               extra_gamma=None if extra is None else format_scalar(extra),
               expected_extra_gamma=format_scalar(2 * lam1 / F(p - 2)))
    for name, got in (("prod1.6[z*a]", mul(z, ea)), ("prod1.6[a*z]", mul(ea, z))):
        want = [lam1 * x for x in z]
        rep.record(name, "identity", got == want, got, want)
    for i, yi in ys.items():
        for j, yj in ys.items():
            got = mul(yi, yj)
            rep.record(f"prod1.7[y{i}*y{j}]", "membership", in_span(plus, got), got)
    if p == 5:
        got = mul(ys[1], ys[1])
        want = _add((1 - 4 * eta, z), (-F(16) / 3 * (1 - eta), ea))
        rep.record("prod1.8", "identity", got == want, got, want)

    # prod2
    half = (p - 1) // 2
    for i, x in xs.items():
        got = mul(x, ea)
        found = _signed_multiple(got, xs, lam2)
        k, l = divmod(2 * i, half)
        literal = [(-1) ** k * lam2 * c for c in xs[l]] if l in xs else None
        rep.record(f"prod2.1[x{i}*a]", "shape", found is not None, got, literal,
                   found=None if found is None else {"sign": found[0], "index": found[1]},
                   literal_match=literal is not None and got == literal)
    c2 = (eta * p - eta - 1) / F(p - 2)
    for i, x in xs.items():
        got, want = mul(z, x), [c2 * c for c in x]
        rep.record(f"prod2.2[z*x{i}]", "identity", got == want, got, want)
    for i, x in xs.items():
        got = mul(x, z)
        rest = [s - eta * t for s, t in zip(got, x)]
        found = _signed_multiple(rest, xs, (eta - 1) / F(p - 2))
        if 4 * i <= p - 1:
            literal = _add((eta, x), ((eta - 1) / F(p - 2), xs.get(2 * i, zero)))
        else:
            literal = _add((eta, x), (-(eta - 1) / F(p - 2), xs.get(p - 2 * i, zero)))
        rep.record(f"prod2.3[x{i}*z]", "shape", found is not None, got, literal,
                   found=None if found is None else {"sign": found[0], "index": found[1]},
                   literal_match=got == literal)
    for j, y in ys.items():
        for i, x in xs.items():
            got = mul(y, x)
            rep.record(f"prod2.4[y{j}*x{i}]", "membership", in_span(minus, got), got)
            got = mul(x, y)
            rep.record(f"prod2.5[x{i}*y{j}]", "membership", in_span(minus, got), got)

    # prod3
    for i, xi in xs.items():
        for j, xj in xs.items():
            got = mul(xi, xj)
            rep.record(f"prod3[x{i}*x{j}]", "membership", in_span(plus, got), got)
    return rep
