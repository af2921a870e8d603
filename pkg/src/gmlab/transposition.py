"""Finite transposition systems (G, T) presented by the conjugation action on T.

G itself is never stored.  A system is the table ``conj[i][j]`` giving the
index of t_i^{t_j}; every construction on the algebra side only needs that.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .exact import is_prime

DEFAULT_CAP = 10_000


class SystemError_(ValueError):
    """Malformed system input (bad spec string, unreadable file, ...)."""


@dataclass(frozen=True)
class TranspositionSystem:
    p: int
    labels: tuple[str, ...]
    conj: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    def dihedral_set(self, i: int, j: int) -> list[int]:
        return dihedral_set(self, i, j)

    def to_json(self) -> dict:
        return {"p": self.p, "labels": list(self.labels), "conj": [list(r) for r in self.conj]}

    @classmethod
    def from_json(cls, obj: dict) -> "TranspositionSystem":
        try:
            p = int(obj["p"])
            conj = tuple(tuple(int(x) for x in row) for row in obj["conj"])
        except (KeyError, TypeError, ValueError) as e:
            raise SystemError_(f"bad system json: {e}") from e
        labels = obj.get("labels") or [str(i) for i in range(len(conj))]
        if len(labels) != len(conj) or any(len(r) != len(conj) for r in conj):
            raise SystemError_("conj must be an n x n table matching labels")
        return cls(p, tuple(str(s) for s in labels), conj)


@dataclass
class ValidationReport:
    ok: bool = True
    failures: list[dict] = field(default_factory=list)

    def fail(self, kind: str, **info):
        self.ok = False
        self.failures.append({"check": kind, **info})

    def to_json(self) -> dict:
        return {"ok": self.ok, "failures": self.failures}


@dataclass(frozen=True)
class BlockPartition:
    axis: int
    blocks: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]


# ---------------------------------------------------------------- models


def dihedral(p: int) -> TranspositionSystem:
    """Reflections r^i s of the dihedral group of order 2p."""
    conj = tuple(tuple((2 * j - i) % p for j in range(p)) for i in range(p))
    return TranspositionSystem(p, tuple(f"r{i}s" if i else "s" for i in range(p)), conj)


def _vec_index(v, p):
    return sum(x * p**k for k, x in enumerate(v))


def frobenius(p: int, d: int) -> TranspositionSystem:
    """Involutions v.t of Z_p^d x| <t>, t acting by inversion; index = sum v_k p^k."""
    vecs = [tuple(v[::-1]) for v in itertools.product(range(p), repeat=d)]
    vecs.sort(key=lambda v: _vec_index(v, p))
    conj = tuple(
        tuple(_vec_index([(2 * w_k - v_k) % p for v_k, w_k in zip(v, w)], p) for w in vecs)
        for v in vecs
    )
    labels = tuple("(" + ",".join(map(str, v)) + ")t" for v in vecs)
    return TranspositionSystem(p, labels, conj)


# B(2,3) as Heisenberg triples (a, b, c) over Z_3:
# (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b').


def heis_mul(g, h):
    return ((g[0] + h[0]) % 3, (g[1] + h[1]) % 3, (g[2] + h[2] + g[0] * h[1]) % 3)


HEIS = [(a, b, c) for a in range(3) for b in range(3) for c in range(3)]
HEIS_ONE = (0, 0, 0)
HEIS_X = (1, 0, 0)
HEIS_Y = (0, 1, 0)


def heis_inv(g):
    return next(h for h in HEIS if heis_mul(g, h) == HEIS_ONE)


def find_inverting_automorphism():
    """The involutory automorphism of B(2,3) inverting x and y.

    Searched among maps (a,b,c) -> (-a, -b, w*c + u*a*b) and checked
    exhaustively rather than written down, so no sign convention is assumed."""
    found = []
    for u in range(3):
        for w in range(3):
            tau = {g: ((-g[0]) % 3, (-g[1]) % 3, (w * g[2] + u * g[0] * g[1]) % 3) for g in HEIS}
            if len(set(tau.values())) != 27:
                continue
            if tau[HEIS_X] != heis_inv(HEIS_X) or tau[HEIS_Y] != heis_inv(HEIS_Y):
                continue
            if any(tau[tau[g]] != g for g in HEIS):
                continue
            if any(tau[heis_mul(g, h)] != heis_mul(tau[g], tau[h]) for g in HEIS for h in HEIS):
                continue
            found.append(tau)
    if len(found) != 1:
        raise RuntimeError(f"expected a unique inverting automorphism, found {len(found)}")
    return found[0]


def burnside23_group():
    """Elements and product of B(2,3) x| <tau> as pairs (g, e), e in {0,1}."""
    tau = find_inverting_automorphism()

    def act(e, h):
        return tau[h] if e else h

    def mul(x, y):
        return (heis_mul(x[0], act(x[1], y[0])), (x[1] + y[1]) % 2)

    elements = [(g, e) for e in range(2) for g in HEIS]
    return elements, mul


def burnside23() -> TranspositionSystem:
    """T = t^G in G = B(2,3) x| <t>, with t inverting both free generators."""
    elements, mul = burnside23_group()
    inv = {x: next(y for y in elements if mul(x, y) == (HEIS_ONE, 0)) for x in elements}
    t = (HEIS_ONE, 1)
    cls = sorted({mul(mul(inv[g], t), g) for g in elements}, key=lambda x: (x[0] != HEIS_ONE, x))
    index = {x: i for i, x in enumerate(cls)}
    conj = tuple(tuple(index[mul(mul(inv[b], a), b)] for b in cls) for a in cls)
    labels = tuple("t" if g == HEIS_ONE else f"[{g[0]}{g[1]}{g[2]}]t" for g, _ in cls)
    return TranspositionSystem(3, labels, conj)


def construct_model(spec: str) -> TranspositionSystem:
    spec = spec.strip()
    if m := re.fullmatch(r"dihedral:(\d+)", spec):
        p = int(m.group(1))
        _check_odd_prime(p)
        return dihedral(p)
    if m := re.fullmatch(r"frobenius:(\d+),(\d+)", spec):
        p, d = int(m.group(1)), int(m.group(2))
        _check_odd_prime(p)
        if d < 1:
            raise SystemError_("rank d must be positive")
        return frobenius(p, d)
    if spec == "burnside23":
        return burnside23()
    if spec.startswith("file:"):
        path = Path(spec[5:])
        try:
            obj = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise SystemError_(f"cannot read {path}: {e}") from e
        sys = TranspositionSystem.from_json(obj.get("system", obj))
        report = validate_system(sys)
        if not report.ok:
            raise SystemError_(f"invalid system in {path}: {report.failures[:3]}")
        return sys
    raise SystemError_(f"unknown model spec {spec!r}")


def _check_odd_prime(p):
    if not is_prime(p) or p == 2:
        raise SystemError_(f"{p} is not an odd prime")


# ---------------------------------------------------------------- queries


def dihedral_set(sys: TranspositionSystem, i: int, j: int) -> list[int]:
    """Canonical ordering a1=i, a2=j, a_{k+1} = a_{k-1}^{a_k}, truncated at p."""
    if i == j:
        raise ValueError("dihedral_set needs two distinct elements")
    seq = [i, j]
    while len(seq) < sys.p:
        seq.append(sys.conj[seq[-2]][seq[-1]])
    return seq


def _dihedral_orbit(sys, i, j, limit):
    # recurrence run until it cycles back to (i, j), used for validation
    seq = [i, j]
    while len(seq) <= limit:
        nxt = sys.conj[seq[-2]][seq[-1]]
        if seq[-1] == i and nxt == j:
            seq.pop()
            return seq
        seq.append(nxt)
    return seq


def validate_system(sys: TranspositionSystem) -> ValidationReport:
    rep = ValidationReport()
    n, p = sys.n, sys.p
    if not is_prime(p) or p == 2:
        rep.fail("p-prime", p=p)
        return rep
    if len(sys.conj) != n or any(len(row) != n for row in sys.conj):
        rep.fail("shape", n=n)
        return rep
    if any(not 0 <= x < n for row in sys.conj for x in row):
        rep.fail("range")
        return rep
    for i in range(n):
        if sys.conj[i][i] != i:
            rep.fail("self-conjugation", cell=[i, i], value=sys.conj[i][i])
    for j in range(n):
        col = [sys.conj[i][j] for i in range(n)]
        if sorted(col) != list(range(n)):
            rep.fail("permutation", column=j)
            continue
        for i in range(n):
            if sys.conj[col[i]][j] != i:
                rep.fail("involution", cell=[i, j])
                break
    if (n - 1) % (p - 1):
        rep.fail("block-divisibility", n=n, p=p)
    if not rep.ok:
        return rep
    model = [[(2 * v - u) % p for v in range(p)] for u in range(p)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            seq = _dihedral_orbit(sys, i, j, 2 * n + 2)
            if len(seq) != p or len(set(seq)) != p:
                rep.fail("dihedral-size", pair=[i, j], size=len(set(seq)))
                continue
            pos = {x: k for k, x in enumerate(seq)}
            for u in seq:
                for v in seq:
                    w = sys.conj[u][v]
                    if w not in pos or pos[w] != model[pos[u]][pos[v]]:
                        rep.fail("dihedral-shape", pair=[i, j], cell=[u, v])
                        break
                else:
                    continue
                break
    return rep


def blocks(sys: TranspositionSystem, a: int) -> BlockPartition:
    assigned = {a}
    blks, reps = [], []
    for b in range(sys.n):
        if b in assigned:
            continue
        blk = tuple(x for x in dihedral_set(sys, a, b) if x != a)
        if assigned.intersection(blk):
            raise ValueError(f"dihedral sets through {a} overlap at {b}")
        assigned.update(blk)
        blks.append(blk)
        reps.append(b)
    return BlockPartition(a, tuple(blks), tuple(reps))


# ---------------------------------------------------------------- permutation groups


@dataclass(frozen=True)
class GroupOrder:
    order: int
    complete: bool  # False means the cap was hit and order is a lower bound
    generators: tuple[tuple[int, ...], ...]


def compose(g, h):
    """(g*h)(x) = g(h(x))."""
    return tuple(g[x] for x in h)


def closure(gens, cap: int = DEFAULT_CAP) -> tuple[set, bool]:
    """Breadth-first product closure.  Returns (elements, complete)."""
    gens = [tuple(g) for g in gens]
    if not gens:
        return set(), True
    ident = tuple(range(len(gens[0])))
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = compose(g, h)
                if x not in elements:
                    elements.add(x)
                    nxt.append(x)
                    if len(elements) >= cap:
                        return elements, False
        frontier = nxt
    return elements, True


def conjugation_perm(sys: TranspositionSystem, a: int) -> tuple[int, ...]:
    return tuple(sys.conj[b][a] for b in range(sys.n))


def conjugation_group(sys: TranspositionSystem, cap: int = DEFAULT_CAP) -> GroupOrder:
    gens = tuple(conjugation_perm(sys, a) for a in range(sys.n))
    els, complete = closure(gens, cap)
    return GroupOrder(len(els), complete, gens)
