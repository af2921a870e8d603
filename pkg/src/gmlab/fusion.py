"""Fusion laws, axis verification and the Miyamoto group."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import GMAlgebra, multiply
from .exact import FieldSpec, format_scalar, good_characteristic, inverse, matvec, parse_scalar, transpose
from .spectral import decompose, matrix_to_perm, plus_minus_split, tau_matrix
from .transposition import DEFAULT_CAP, closure, compose, conjugation_group, conjugation_perm


class FusionError(ValueError):
    pass


@dataclass
class FusionLaw:
    values: list
    table: dict  # (mu, nu) -> frozenset of values
    name: str = "custom"

    def __call__(self, mu, nu) -> frozenset:
        return self.table[(mu, nu)]

    def is_symmetric(self) -> bool:
        return all(self.table[(m, n)] == self.table[(n, m)] for m in self.values for n in self.values)

    def contains(self, other: "FusionLaw") -> bool:
        """True when every cell of ``other`` is inside the matching cell here."""
        for (m, n), s in other.table.items():
            if s and ((m, n) not in self.table or not s <= self.table[(m, n)]):
                return False
        return True

    def grading(self):
        """A nontrivial Z2-grading (plus, minus) if one exists, else None."""
        vals = self.values
        one = vals[0]
        others = vals[1:]
        # brute force over sign assignments with 1 in the even part
        for mask in range(1, 2 ** len(others)):
            minus = {v for k, v in enumerate(others) if mask >> k & 1}
            plus = {one} | {v for v in others if v not in minus}

            def sign(s):
                return s in minus

            ok = True
            for (m, n), cell in self.table.items():
                want_minus = sign(m) != sign(n)
                if any(sign(v) != want_minus for v in cell):
                    ok = False
                    break
            if ok:
                return plus, minus
        return None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "values": [format_scalar(v) for v in self.values],
            "table": [
                [format_scalar(m), format_scalar(n), [format_scalar(v) for v in self._ordered(self.table[(m, n)])]]
                for m in self.values
                for n in self.values
            ],
        }

    def _ordered(self, s):
        return [v for v in self.values if v in s]


def make_law(kind: str, alpha=None, beta=None, table=None, field: FieldSpec | None = None) -> FusionLaw:
    """Monster type M(alpha, beta), generalized Monster type GM(alpha, beta), or a custom table."""
    if kind == "custom":
        if table is None:
            raise FusionError("custom law needs a table")
        values = []
        for (m, n) in table:
            for v in (m, n):
                if v not in values:
                    values.append(v)
        return FusionLaw(values, {k: frozenset(v) for k, v in table.items()}, "custom")
    if kind not in ("M", "GM"):
        raise FusionError(f"unknown law kind {kind!r}")
    F = field or FieldSpec()
    one, zero = F.one, F.zero
    a, b = F(alpha), F(beta)
    values = [one, zero, a, b]
    if len(set(values)) != 4:
        raise FusionError("fusion law values 1, 0, alpha, beta must be distinct")
    t = {}
    t[(one, one)] = {one}
    t[(one, zero)] = t[(zero, one)] = set()
    t[(zero, zero)] = {zero} if kind == "M" else {zero, one}
    for x in (one, zero):
        t[(x, a)] = t[(a, x)] = {a}
        t[(x, b)] = t[(b, x)] = {b}
    t[(a, a)] = {one, zero} if kind == "M" else {one, zero, a}
    t[(a, b)] = t[(b, a)] = {b}
    t[(b, b)] = {one, zero, a}
    name = f"{kind}({format_scalar(a)},{format_scalar(b)})"
    return FusionLaw(values, {k: frozenset(v) for k, v in t.items()}, name)


def parse_law(text: str, field: FieldSpec) -> FusionLaw | None:
    """'M:4/3,-4/3', 'GM:6/5,-6/5', or 'infer' (returns None)."""
    text = text.strip()
    if text == "infer":
        return None
    m = re.fullmatch(r"(M|GM):([^,]+),(.+)", text)
    if not m:
        raise FusionError(f"bad law spec {text!r}")
    return make_law(m.group(1), parse_scalar(m.group(2), field), parse_scalar(m.group(3), field), field=field)


@dataclass
class _Projector:
    values: list
    vectors: list  # [(value, vector, local index)]
    inv: list  # inverse of the eigenbasis matrix (column convention)


def _projector(A: GMAlgebra, a: int, side: str) -> _Projector:
    dec = decompose(A, a, side)
    if not dec.semisimple:
        raise FusionError(f"{side} operator of axis {a} is not semisimple (deficit {dec.deficit})")
    vecs = []
    for lam, basis in dec.parts:
        for k, v in enumerate(basis):
            vecs.append((lam, v, k))
    P = transpose([v for _, v, _ in vecs])
    return _Projector([lam for lam, b in dec.parts if b], vecs, inverse(P))


def _components(proj: _Projector, w) -> dict:
    """eigenvalue -> coordinates of w on that eigenspace's basis (nonzero parts only)."""
    c = matvec(proj.inv, w)
    out = {}
    for (lam, _, _), x in zip(proj.vectors, c):
        if x:
            out.setdefault(lam, []).append(x)
    return out


@dataclass
class FusionReport:
    axis: int
    law: FusionLaw
    side: str
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def cells(self):
        return sorted({(format_scalar(v["mu"]), format_scalar(v["nu"])) for v in self.violations})

    def to_json(self) -> dict:
        return {
            "axis": self.axis,
            "side": self.side,
            "law": self.law.to_json(),
            "pass": self.passed,
            "violations": [
                {
                    "mu": format_scalar(v["mu"]),
                    "nu": format_scalar(v["nu"]),
                    "witness": v["witness"],
                    "offending": [format_scalar(x) for x in v["offending"]],
                }
                for v in self.violations
            ],
        }


def _product_table(A: GMAlgebra, a: int, side: str):
    """For every pair of eigenvectors, the set of eigenvalues in the product's support."""
    proj = _projector(A, a, side)
    rows = []
    for lam_u, u, iu in proj.vectors:
        for lam_v, v, iv in proj.vectors:
            comps = _components(proj, multiply(A, u, v))
            rows.append((lam_u, lam_v, (iu, iv), set(comps)))
    return proj, rows


def verify_axis(A: GMAlgebra, a: int, law: FusionLaw, side: str = "left") -> FusionReport:
    """Check every product of eigenbasis vectors against the law.

    By bilinearity basis pairs are exhaustive, so a pass is a proof."""
    proj, rows = _product_table(A, a, side)
    return _check_rows(a, side, proj, rows, law)


def _check_rows(a, side, proj, rows, law) -> FusionReport:
    rep = FusionReport(a, law, side)
    law_values = set(law.values)
    for lam in proj.values:
        if lam not in law_values:
            rep.violations.append({"mu": lam, "nu": lam, "witness": None, "offending": [lam],
                                   "reason": "eigenvalue outside the law"})
    for mu, nu, (iu, iv), support in rows:
        if mu not in law_values or nu not in law_values:
            continue
        bad = [v for v in proj.values if v in support - law(mu, nu)]
        if bad:
            rep.violations.append({"mu": mu, "nu": nu, "witness": [iu, iv], "offending": bad})
    return rep


def infer_law(A: GMAlgebra, a: int, side: str = "left") -> FusionLaw:
    """Smallest law the axis obeys: each cell lists exactly the eigenvalues seen."""
    proj, rows = _product_table(A, a, side)
    table = {(m, n): set() for m in proj.values for n in proj.values}
    for mu, nu, _, support in rows:
        table[(mu, nu)] |= support
    law = FusionLaw(list(proj.values), {k: frozenset(v) for k, v in table.items()}, f"inferred({side},{a})")
    return law


def eta_scan_monster(p: int, bound: int = 9):
    """Try every rational eta = r/s with |r|, s <= bound on dihedral:p.

    For each eta of good characteristic and each alpha in the spectrum of
    L_a other than 1, test whether axis 0 is an M(alpha, -alpha)-axis.
    Returns (passing (eta, alpha) pairs, number of laws tried)."""
    from .algebra import build
    from .transposition import dihedral

    sys = dihedral(p)
    F = FieldSpec()
    etas = sorted({Fraction(r, s) for r in range(-bound, bound + 1) for s in range(1, bound + 1)} - {0, 1})
    hits, tried = [], 0
    for eta in etas:
        if not good_characteristic(p, eta):
            continue
        A = build(sys, F, eta)
        proj, rows = _product_table(A, 0, "left")
        for alpha in proj.values:
            if alpha in (0, 1) or -alpha in (0, 1):
                continue
            tried += 1
            law = make_law("M", alpha, -alpha, field=F)
            if _check_rows(0, "left", proj, rows, law).passed:
                hits.append((eta, alpha))
    return hits, tried


@dataclass
class MiyamotoResult:
    order: int
    complete: bool
    generators: list
    matches_conjugation: bool
    conjugation_order: int


def tau_perms(A: GMAlgebra) -> list:
    perms = []
    for a in range(A.n):
        perm = matrix_to_perm(tau_matrix(A, a, plus_minus_split(A, a)))
        if perm is None:
            raise FusionError(f"tau_{a} is not a basis permutation")
        perms.append(perm)
    return perms


def miyamoto_group(A: GMAlgebra, cap: int = DEFAULT_CAP) -> MiyamotoResult:
    gens = tau_perms(A)
    els, complete = closure(gens, cap)
    conj = conjugation_group(A.sys, cap)
    same_gens = all(gens[a] == conjugation_perm(A.sys, a) for a in range(A.n))
    matches = same_gens and len(els) == conj.order and complete == conj.complete
    return MiyamotoResult(len(els), complete, gens, matches, conj.order)


def tau_conjugation_law(perms) -> list:
    """Pairs (a, b) where tau_{a^b} != tau_b tau_a tau_b."""
    bad = []
    n = len(perms)
    for a in range(n):
        for b in range(n):
            ab = perms[b][a]  # tau_b(e_a) = e_{a^b}
            if perms[ab] != compose(perms[b], compose(perms[a], perms[b])):
                bad.append((a, b))
    return bad
